#include <ctype.h>
#include <stdio.h>

int read_alpha(void) {
    int c = getchar();
    return isalpha(c);
}
