#include <string.h>

int same_name(void) {
    char x[8];
    char y[8];
    x[0] = 0;
    y[0] = 0;
    return memcmp(x, y, 8); // EXPECT: SEC.memcmp.2
}
