#include <stdio.h>
#include <string.h>

void label(char *out, const char *name, int id) {
    char tmp[16];
    sprintf(tmp, "%d", id); // EXPECT: SEC.string.1
    strcpy(out, name); // EXPECT: SEC.string.1
    strcat(out, tmp); // EXPECT: SEC.string.1
}
