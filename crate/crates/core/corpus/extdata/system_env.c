#include <stdlib.h>

int run(void) {
    return system(getenv("CMD")); // EXPECT: SEC.extdata.1
}
