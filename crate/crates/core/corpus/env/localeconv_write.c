#include <locale.h>

void tweak(void) {
    struct lconv *lc = localeconv();
    lc->decimal_point = 0; // EXPECT: SEC.env.1
}
