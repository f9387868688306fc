#include <errno.h>

int failed(void) {
    return errno == ERANGE; // EXPECT: SEC.errno.3
}
