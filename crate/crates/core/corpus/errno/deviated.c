#include <errno.h>
#include <stdlib.h>

long parse(const char *s) {
    errno = 0;
    /* seclint-deviation: SEC.errno.2 input validated by the grammar */
    return strtol(s, NULL, 10); // EXPECT-SUPPRESSED: SEC.errno.2
}
