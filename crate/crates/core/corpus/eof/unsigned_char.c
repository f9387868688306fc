#include <stdio.h>

int skip(FILE *f) {
    unsigned char ch;
    ch = getc(f);
    return EOF == ch; // EXPECT: SEC.eof.1
}
