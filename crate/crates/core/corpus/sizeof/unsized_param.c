#include <string.h>

void wipe(char buf[]) {
    memset(buf, 0, sizeof buf); // EXPECT: SEC.sizeof.1
}
