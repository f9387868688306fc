#include <stdio.h>

int hist[32];

void bump(void) {
    int v = getchar();
    if (v >= 0 && v < sizeof hist / sizeof hist[0]) {
        hist[v] = hist[v] + 1;
    }
}
