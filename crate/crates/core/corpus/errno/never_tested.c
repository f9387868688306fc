#include <errno.h>
#include <stdlib.h>

unsigned long parse(const char *s) {
    errno = 0;
    return strtoul(s, NULL, 16); // EXPECT: SEC.errno.2
}
