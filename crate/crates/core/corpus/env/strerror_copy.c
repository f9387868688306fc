#include <string.h>

void decorate(int e) {
    char *m = strerror(e);
    strncpy(m, "E:", 2); // EXPECT: SEC.env.1
}
