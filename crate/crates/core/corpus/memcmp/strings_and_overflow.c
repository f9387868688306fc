#include <string.h>

int same_label(const char *label) {
    char want[16];
    want[0] = 0;
    return memcmp(want, label, 32); // EXPECT: SEC.memcmp.2 // EXPECT: SEC.memcmp.3
}
