#include <stdlib.h>

void clobber(void) {
    char *home;
    home = getenv("HOME");
    if (home) {
        *home = 0; // EXPECT: SEC.env.1
    }
}
