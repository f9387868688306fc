#include <stdlib.h>

int use(int c);

void refetch(void) {
    char *p = getenv("A");
    char *q = getenv("B");
    use(q[0]);
    p = getenv("A");
    use(p[0]);
}
