// CORPUS-PROFILE: restrictive
#include <stdlib.h>

int scratch(void) {
    int *p = malloc(8); // EXPECT: BAN.21_3
    int v;
    if (p == NULL) {
        return 0;
    }
    p[0] = 3;
    v = p[0];
    free(p); // EXPECT: BAN.21_3
    return v;
}
