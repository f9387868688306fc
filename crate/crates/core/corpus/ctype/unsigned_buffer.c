#include <ctype.h>

int count_upper(const unsigned char *s, int len) {
    int i;
    int n;
    n = 0;
    for (i = 0; i < len; i++) {
        if (isupper(s[i])) {
            n++;
        }
    }
    return n;
}
