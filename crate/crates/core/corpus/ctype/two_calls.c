#include <ctype.h>

int is_word(char a, char b) {
    return isalnum(a) && isspace(b); // EXPECT: SEC.ctype.1 // EXPECT: SEC.ctype.1
}
