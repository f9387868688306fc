#include <string.h>

void copy(const char *src) {
    char d[16];
    memcpy(d, src, sizeof d);
    memmove(d, d + 1, 15);
}
