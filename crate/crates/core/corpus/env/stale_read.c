#include <stdlib.h>

int use(int c);

void both(void) {
    char *p = getenv("A");
    char *q = getenv("B");
    use(p[0]); // EXPECT: SEC.env.2
    use(q[0]);
}
