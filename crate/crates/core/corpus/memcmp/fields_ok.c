#include <string.h>

struct point {
    char tag;
    int x;
};

int same(const struct point *a, const struct point *b) {
    int d[2];
    int e[2];
    d[0] = a->x;
    e[0] = b->x;
    d[1] = a->tag;
    e[1] = b->tag;
    return memcmp(d, e, sizeof d) == 0;
}
