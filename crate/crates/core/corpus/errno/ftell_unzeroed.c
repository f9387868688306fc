#include <errno.h>
#include <stdio.h>

long position(FILE *f) {
    long pos = ftell(f); // EXPECT: SEC.errno.1
    if (errno != 0) {
        return -1;
    }
    return pos;
}
