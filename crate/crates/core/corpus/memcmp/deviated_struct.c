#include <string.h>

struct packed {
    int a;
    int b;
};

int same(const struct packed *p, const struct packed *q) {
    /* seclint-deviation: SEC.memcmp.1 no padding in this layout */
    return memcmp(p, q, sizeof *p) == 0; // EXPECT-SUPPRESSED: SEC.memcmp.1
}
