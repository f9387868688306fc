#include <stdio.h>

int lut[8];

int drain(void) {
    int v;
    int acc;
    acc = 0;
    v = getchar();
    while (acc < 100) {
        if (v >= 0 && v < 8) {
            acc = acc + lut[v];
        }
        acc = acc + lut[v]; // EXPECT: SEC.extdata.1
        v = getchar();
    }
    return acc;
}
