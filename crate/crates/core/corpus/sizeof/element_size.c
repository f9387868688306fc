#include <stddef.h>

size_t elem(int a[4]) {
    size_t s = sizeof(a[0]);
    return s;
}
