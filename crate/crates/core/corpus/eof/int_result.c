#include <stdio.h>

int at_end(void) {
    int c = getchar();
    if (c == EOF) {
        return 1;
    }
    return 0;
}
