// CORPUS-PROFILE: both
#include <stdlib.h>

void mangle(void) {
    char *p = getenv("A"); // EXPECT: BAN.21_8
    p[0] = 'x'; // EXPECT: SEC.env.1
}
