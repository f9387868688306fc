#include <string.h>

int atoi(const char *s);

int main(int argc, char **argv) {
    char dst[32];
    char src[32];
    int n;
    n = atoi(argv[1]);
    memcpy(dst, src, n); // EXPECT: SEC.extdata.1
    return dst[0] + argc;
}
