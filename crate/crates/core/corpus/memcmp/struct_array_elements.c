#include <string.h>

struct cell {
    char kind;
    double weight;
};

int same_first(struct cell *a, struct cell *b) {
    return !memcmp(&a[0], &b[0], sizeof(struct cell)); // EXPECT: SEC.memcmp.1
}
