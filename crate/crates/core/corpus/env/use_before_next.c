#include <stdlib.h>

void copybuf(const char *p);

void ordered(void) {
    char *p = getenv("A");
    copybuf(p);
    char *q = getenv("B");
    copybuf(q);
}
