int atoi(const char *s);

int main(int argc, char **argv) {
    int buf[4];
    int n;
    buf[0] = argc;
    n = atoi(argv[1]);
    /* seclint-deviation: SEC.extdata.1 launcher guarantees 0..3 */
    buf[n] = 1; // EXPECT-SUPPRESSED: SEC.extdata.1
    return buf[0];
}
