#include <string.h>

int atoi(const char *s);

int main(int argc, char **argv) {
    char out[64];
    int n;
    out[0] = 0;
    n = atoi(argv[2]);
    if (n > 0 && n < 32) {
        strncat(out, argv[1], n);
    }
    return out[0] + argc;
}
