// CORPUS-PROFILE: restrictive
#include <signal.h>

void on_int(int sig) {
    (void)sig;
}

void install(void) {
    signal(SIGINT, on_int); // EXPECT: BAN.21_5
    raise(SIGINT); // EXPECT: BAN.21_5
}
