#include <stdlib.h>

void twice(void) {
    char *a = getenv("A");
    char *b = getenv("B");
    b[0] = a[1]; // EXPECT: SEC.env.1 // EXPECT: SEC.env.2
}
