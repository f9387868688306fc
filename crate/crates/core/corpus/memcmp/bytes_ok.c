#include <string.h>

int same_key(void) {
    unsigned char x[16];
    unsigned char y[16];
    x[0] = 0;
    y[0] = 0;
    return memcmp(x, y, sizeof x) == 0;
}
