int sum(int v[16]) {
    int acc;
    unsigned long i;
    acc = 0;
    for (i = 0; i < sizeof(v) / sizeof(v[0]); i++) { // EXPECT: SEC.sizeof.1
        acc = acc + v[i];
    }
    return acc;
}
