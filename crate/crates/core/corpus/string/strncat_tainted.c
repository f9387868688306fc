#include <string.h>

int atoi(const char *s);

int main(int argc, char **argv) {
    char out[64];
    int n;
    out[0] = 0;
    n = atoi(argv[2]);
    strncat(out, argv[1], n); // EXPECT: SEC.string.2 // EXPECT: SEC.extdata.1
    return out[0] + argc;
}
