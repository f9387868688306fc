int atoi(const char *s);

int main(int argc, char **argv) {
    int buf[10];
    int n;
    if (argc < 2) {
        return 1;
    }
    n = atoi(argv[1]);
    buf[n] = 0; // EXPECT: SEC.extdata.1
    return buf[0];
}
