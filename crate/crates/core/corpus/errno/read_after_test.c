#include <errno.h>
#include <stdlib.h>

int classify(const char *s) {
    long v;
    if (errno == EDOM) { // EXPECT: SEC.errno.3
        return -2;
    }
    errno = 0;
    v = strtol(s, NULL, 8);
    if (errno == ERANGE) {
        return -1;
    }
    return v > 0;
}
