// CORPUS-PROFILE: restrictive
#include <stdlib.h>

void release(void *p, void *q) {
    free(p); // EXPECT: BAN.21_3
    free(q); // EXPECT: BAN.21_3
}
