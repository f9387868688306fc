#include <errno.h>
#include <stdlib.h>

long sum(char **items, int count) {
    long total;
    long v;
    int i;
    total = 0;
    for (i = 0; i < count; i++) {
        errno = 0;
        v = strtol(items[i], NULL, 10);
        if (errno != 0) {
            return -1;
        }
        total = total + v;
    }
    return total;
}
