#include <string.h>

void copy(char *dst, const char *src) {
    strcpy(dst, src); // EXPECT: SEC.string.1
}
