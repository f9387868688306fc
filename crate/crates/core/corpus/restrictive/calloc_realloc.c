// CORPUS-PROFILE: both
#include <stdlib.h>
#include <string.h>

char *grow(const char *s) {
    char *p = calloc(4, 1); // EXPECT: BAN.21_3
    p = realloc(p, 16); // EXPECT: BAN.21_3
    strcpy(p, s); // EXPECT: SEC.string.1
    return p;
}
