#include <errno.h>
#include <stdlib.h>

long parse(const char *s, int strict) {
    long v;
    errno = 0;
    v = strtol(s, NULL, 10); // EXPECT: SEC.errno.2
    if (strict) {
        if (errno == ERANGE) {
            return 0;
        }
    }
    return v;
}
