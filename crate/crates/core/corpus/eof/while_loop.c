#include <stdio.h>

int count(FILE *f) {
    char c;
    int n;
    n = 0;
    while ((c = fgetc(f)) != EOF) { // EXPECT: SEC.eof.1
        n++;
    }
    return n;
}
