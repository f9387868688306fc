#include <stdio.h>

int read_line(void) {
    char buf[80];
    gets(buf); // EXPECT: SEC.string.1
    return buf[0];
}
