#include <stdlib.h>
#include <string.h>

int report(int e) {
    char *lang = getenv("LANG");
    char *msg = strerror(e);
    return *lang + *msg; // EXPECT: SEC.env.2
}
