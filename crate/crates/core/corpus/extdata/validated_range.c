#include <stdlib.h>

int atoi(const char *s);

int buf[10];

void store(void) {
    int n;
    n = atoi(getenv("N"));
    if (n >= 0 && n < 10) {
        buf[n] = 0;
    }
}
