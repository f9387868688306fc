#include <string.h>

int prefix(const char *a, const char *b) {
    return memcmp(a, b, 3); // EXPECT: SEC.memcmp.2
}
