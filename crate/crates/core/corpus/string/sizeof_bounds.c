#include <stdio.h>
#include <string.h>

void join(const char *a, const char *b) {
    char out[40];
    out[0] = 0;
    strncat(out, a, sizeof out - 1);
    strncat(out, b, sizeof out - strlen(out) - 1);
    snprintf(out, sizeof(out), "%s", a);
}
