#include <stdlib.h>
#include <string.h>

int first(void) {
    char saved[32];
    char *p = getenv("TERM");
    saved[0] = 0;
    if (p != NULL) {
        strncpy(saved, p, sizeof saved - 1);
    }
    p = getenv("COLUMNS");
    return saved[0];
}
