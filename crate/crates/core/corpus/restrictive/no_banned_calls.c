// CORPUS-PROFILE: restrictive
#include <string.h>

void copy(const char *s) {
    char d[16];
    strncpy(d, s, sizeof d);
    d[15] = 0;
}
