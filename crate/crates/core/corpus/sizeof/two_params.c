#include <stddef.h>

size_t total(int a[8], double b[8]) {
    return sizeof a + sizeof(b); // EXPECT: SEC.sizeof.1 // EXPECT: SEC.sizeof.1
}
