#include <stdio.h>
#include <string.h>

void copy(const char *s, int v) {
    char d[16];
    char num[12];
    strncpy(d, s, sizeof d);
    d[15] = 0;
    snprintf(num, sizeof num, "%d", v);
    strncat(d, num, 4);
}
