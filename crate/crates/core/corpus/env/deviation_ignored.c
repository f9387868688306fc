#include <stdlib.h>

void mangle(void) {
    char *p = getenv("A");
    /* seclint-deviation: SEC.env.1 buffer is private to this process */
    p[0] = 'x'; // EXPECT: SEC.env.1
}
