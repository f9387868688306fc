#include <errno.h>
#include <stdlib.h>

double parse_pair(const char *s, const char *t) {
    long v;
    double w;
    errno = 0;
    v = strtol(s, 0, 10); // EXPECT: SEC.errno.2
    w = strtod(t, 0); // EXPECT: SEC.errno.1
    if (errno) {
        return 0.0;
    }
    return w + v;
}
