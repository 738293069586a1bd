#include <cstdio>
int main() { std::printf("waveop cli: pending\n"); return 0; }
