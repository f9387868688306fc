// CORPUS-PROFILE: restrictive
#include <signal.h>

void on_term(int sig) {
    (void)sig;
}

void setup(void) {
    signal(SIGTERM, on_term); // EXPECT: BAN.21_5
    signal(SIGABRT, on_term); // EXPECT: BAN.21_5
}
