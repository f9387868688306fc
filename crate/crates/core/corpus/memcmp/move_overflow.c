#include <string.h>

int shift(void) {
    int a[4];
    int b[2];
    a[0] = 0;
    b[0] = 0;
    memmove(b, a, sizeof a); // EXPECT: SEC.memcmp.3
    return b[0];
}
