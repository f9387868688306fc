#include <string.h>

void copy(const unsigned char *src) {
    unsigned char d[4];
    memcpy(d, src, 8); // EXPECT: SEC.memcmp.3
    d[0] = 0;
}
