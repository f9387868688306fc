// CORPUS-PROFILE: restrictive
#include <stdlib.h>

int count_set(void) {
    int n;
    n = 0;
    if (getenv("A") != NULL) { // EXPECT: BAN.21_8
        n++;
    }
    if (getenv("B") != NULL) { // EXPECT: BAN.21_8
        n++;
    }
    return n;
}
