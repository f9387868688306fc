#include <string.h>

int check(const unsigned char *key) {
    unsigned char want[16];
    want[0] = 1;
    return memcmp(want, key, 32); // EXPECT: SEC.memcmp.3
}
