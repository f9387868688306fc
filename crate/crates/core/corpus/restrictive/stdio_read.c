// CORPUS-PROFILE: restrictive
#include <stdio.h>

int first(FILE *f) {
    char line[32];
    if (fgets(line, sizeof line, f) == NULL) { // EXPECT: BAN.21_6
        return -1;
    }
    return getc(f); // EXPECT: BAN.21_6
}
