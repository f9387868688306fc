#include <stdio.h>

void fmt(int v) {
    char buf[32];
    snprintf(buf, 64, "%d", v); // EXPECT: SEC.string.2
    buf[0] = 0;
}
