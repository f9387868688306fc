#include <stdio.h>
#include <stdlib.h>

int scratch(void) {
    int *p = malloc(sizeof(int));
    if (p == NULL) {
        return 0;
    }
    *p = 1;
    printf("%d\n", *p);
    free(p);
    return 1;
}
