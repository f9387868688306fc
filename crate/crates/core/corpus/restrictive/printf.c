// CORPUS-PROFILE: restrictive
#include <stdio.h>

void greet(const char *name) {
    printf("hello %s\n", name); // EXPECT: BAN.21_6
}
