#include <stddef.h>

size_t width(int a[4]) {
    /* seclint-deviation: SEC.sizeof.1 pointer size intended */
    return sizeof(a); // EXPECT: SEC.sizeof.1
}
