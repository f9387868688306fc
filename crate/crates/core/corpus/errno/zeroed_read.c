#include <errno.h>

int check(int x) {
    errno = 0;
    if (errno != 0) { // EXPECT: SEC.errno.3
        return -1;
    }
    return x;
}
