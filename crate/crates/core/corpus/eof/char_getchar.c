#include <stdio.h>

int at_end(void) {
    char c = getchar();
    if (c == EOF) { // EXPECT: SEC.eof.1
        return 1;
    }
    return 0;
}
