#include <stdlib.h>

int atoi(const char *s);

int sum(void) {
    int n;
    int i;
    int total;
    n = atoi(getenv("COUNT"));
    total = 0;
    for (i = 0; i < n; i++) { // EXPECT: SEC.extdata.1
        total = total + i;
    }
    return total;
}
