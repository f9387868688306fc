// CORPUS-PROFILE: restrictive
#include <stdlib.h>

int has_home(void) {
    char *h = getenv("HOME"); // EXPECT: BAN.21_8
    h[0] = 0;
    return h != NULL;
}
