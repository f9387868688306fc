// CORPUS-PROFILE: restrictive
#include <stdio.h>

void log_line(const char *m) {
    /* seclint-deviation: BAN.21_6 diagnostics console only */
    puts(m); // EXPECT-SUPPRESSED: BAN.21_6
}
