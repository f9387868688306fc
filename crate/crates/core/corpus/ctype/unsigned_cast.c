#include <ctype.h>

int first_alpha(char c) {
    return isalpha((unsigned char)c);
}
