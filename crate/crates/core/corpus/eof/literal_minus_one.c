#include <stdio.h>

int sentinel(void) {
    char c = 'a';
    if (c == -1) {
        return 1;
    }
    return 0;
}
