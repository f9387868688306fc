#include <string.h>

void clear(char *dst, const char *src) {
    int data[8];
    int i;
    for (i = 0; i < 8; i++) {
        data[i] = 0;
    }
    memcpy(dst, src, sizeof data);
}
