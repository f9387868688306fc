#include <stdio.h>

int slots[4];

int pick(void) {
    int n;
    n = 0;
    if (scanf("%d", &n) != 1) {
        return -1;
    }
    return slots[n]; // EXPECT: SEC.extdata.1
}
