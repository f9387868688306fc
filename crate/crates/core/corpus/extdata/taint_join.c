#include <stdlib.h>

int atoi(const char *s);

int table[16];

int main(int argc, char **argv) {
    int n;
    int k;
    int fast;
    n = atoi(argv[1]);
    k = 0;
    fast = argc > 2;
    if (fast) {
        k = 1;
    } else if (n >= 0 && n < 16) {
        k = 2;
    }
    k = k + 1;
    table[0] = k;
    table[n] = k; // EXPECT: SEC.extdata.1
    return table[1];
}
