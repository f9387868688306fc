#include <stdio.h>

int is_end(char c) {
    /* seclint-deviation: SEC.eof.1 input is 7-bit ASCII by contract */
    return c == EOF; // EXPECT-SUPPRESSED: SEC.eof.1
}
