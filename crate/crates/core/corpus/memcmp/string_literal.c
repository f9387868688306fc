#include <string.h>

int is_magic(const char *hdr) {
    return memcmp(hdr, "GIF8", 4) == 0; // EXPECT: SEC.memcmp.2
}
