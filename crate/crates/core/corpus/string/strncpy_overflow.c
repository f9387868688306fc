#include <string.h>

void copy(const char *s) {
    char d[4];
    strncpy(d, s, 8); // EXPECT: SEC.string.2
    d[3] = 0;
}
