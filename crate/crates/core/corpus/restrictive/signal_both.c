// CORPUS-PROFILE: both
#include <signal.h>
#include <stdio.h>

void on_int(int sig) {
    (void)sig;
}

int main(void) {
    signal(SIGINT, on_int); // EXPECT: BAN.21_5
    printf("ready\n"); // EXPECT: BAN.21_6
    return 0;
}
