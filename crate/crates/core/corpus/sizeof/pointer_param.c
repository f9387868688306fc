#include <stddef.h>

size_t width(int *a) {
    size_t s = sizeof(a);
    return s;
}
