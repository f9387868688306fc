#include <string.h>

struct point {
    char tag;
    int x;
};

int same(void) {
    struct point a;
    struct point b;
    a.x = 1;
    b.x = 1;
    return memcmp(&a, &b, sizeof a) == 0; // EXPECT: SEC.memcmp.1
}
