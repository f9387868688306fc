#include <stddef.h>

size_t local(void) {
    int a[4];
    a[0] = 1;
    return sizeof(a) + sizeof(int) + (size_t)a[0];
}
