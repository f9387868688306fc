#include <ctype.h>

void upcase(signed char *buf, int len) {
    int i;
    for (i = 0; i < len; i++) {
        buf[i] = (signed char)toupper(buf[i]); // EXPECT: SEC.ctype.1
    }
}
