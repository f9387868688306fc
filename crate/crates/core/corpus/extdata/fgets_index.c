#include <stdio.h>

int counts[256];

void tally(void) {
    char line[64];
    int idx;
    if (fgets(line, sizeof line, stdin) != NULL) {
        idx = line[0];
        counts[idx] = counts[idx] + 1; // EXPECT: SEC.extdata.1 // EXPECT: SEC.extdata.1
    }
}
