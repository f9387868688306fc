#include <string.h>

struct rec {
    short id;
    long value;
};

int equal(const struct rec *p, const struct rec *q) {
    return memcmp(p, q, sizeof(struct rec)) == 0; // EXPECT: SEC.memcmp.1
}
