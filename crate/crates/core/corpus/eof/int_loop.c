#include <stdio.h>

int count(FILE *f) {
    int c;
    int n;
    n = 0;
    while ((c = fgetc(f)) != EOF) {
        n++;
    }
    return n;
}
