#include <string.h>

void copy(char *dst) {
    /* seclint-deviation: SEC.string.1 source is a short literal */
    strcpy(dst, "ok"); // EXPECT: SEC.string.1
}
