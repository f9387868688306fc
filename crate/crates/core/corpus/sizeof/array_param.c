#include <stddef.h>

size_t width(int a[4]) {
    size_t s = sizeof(a); // EXPECT: SEC.sizeof.1
    return s;
}
