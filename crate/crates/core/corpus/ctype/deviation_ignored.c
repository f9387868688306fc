#include <ctype.h>

int lower(char c) {
    /* seclint-deviation: SEC.ctype.1 input is ASCII */
    return tolower(c); // EXPECT: SEC.ctype.1
}
