#include <stdlib.h>
#include <string.h>

size_t lengths(void) {
    char *user = getenv("USER");
    char *shell = getenv("SHELL");
    return strlen(user) + strlen(shell); // EXPECT: SEC.env.2
}
