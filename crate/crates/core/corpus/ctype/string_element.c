#include <ctype.h>

int count_digits(const char *s) {
    int n;
    n = 0;
    while (*s != 0) {
        if (isdigit(*s)) { // EXPECT: SEC.ctype.1
            n++;
        }
        s++;
    }
    return n;
}
