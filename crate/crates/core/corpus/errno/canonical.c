#include <errno.h>
#include <stdlib.h>

long parse(const char *s) {
    long v;
    errno = 0;
    v = strtol(s, NULL, 10);
    if (errno) {
        return -1;
    }
    return v;
}
