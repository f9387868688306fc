#include <ctype.h>

int first_alpha(void) {
    char c;
    c = 'q';
    return isalpha(c); // EXPECT: SEC.ctype.1
}
