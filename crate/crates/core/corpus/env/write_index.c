#include <stdlib.h>

void mangle(void) {
    char *p = getenv("A");
    if (p != NULL) {
        p[0] = 'x'; // EXPECT: SEC.env.1
    }
}
