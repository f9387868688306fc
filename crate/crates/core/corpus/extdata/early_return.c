int atoi(const char *s);

int main(int argc, char **argv) {
    int vals[10];
    int n;
    vals[0] = argc;
    n = atoi(argv[1]);
    if (!(n >= 0 && n < 10)) {
        return 1;
    }
    vals[n] = 7;
    return vals[0];
}
