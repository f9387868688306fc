#include <errno.h>
#include <stdlib.h>

long parse(const char *s) {
    long v;
    v = strtol(s, NULL, 10); // EXPECT: SEC.errno.1
    if (errno) {
        return -1;
    }
    return v;
}
