#include <stdio.h>

int is_end(signed char c) {
    return c != EOF; // EXPECT: SEC.eof.1
}
