/*
   Reference MT19937 (2002 version, init_genrand/init_by_array) used to
   freeze known-answer files for the test suite.  The core routines below
   follow the original mt19937ar.c by Matsumoto and Nishimura.

   Usage: mt19937ar_ref <seed> <count> [mode]
     mode: int32 (default) | res53
   Prints one value per line.  int32 prints decimal uint32; res53 prints
   the 53-bit numerator (integer in [0, 2^53)) so the file is exact.
*/
#include <stdio.h>
#include <stdlib.h>

#define N 624
#define M 397
#define MATRIX_A 0x9908b0dfUL
#define UPPER_MASK 0x80000000UL
#define LOWER_MASK 0x7fffffffUL

static unsigned long mt[N];
static int mti = N + 1;

static void init_genrand(unsigned long s)
{
    mt[0] = s & 0xffffffffUL;
    for (mti = 1; mti < N; mti++) {
        mt[mti] = (1812433253UL * (mt[mti-1] ^ (mt[mti-1] >> 30)) + mti);
        mt[mti] &= 0xffffffffUL;
    }
}

static unsigned long genrand_int32(void)
{
    unsigned long y;
    static unsigned long mag01[2] = {0x0UL, MATRIX_A};

    if (mti >= N) {
        int kk;
        if (mti == N + 1)
            init_genrand(5489UL);
        for (kk = 0; kk < N - M; kk++) {
            y = (mt[kk] & UPPER_MASK) | (mt[kk+1] & LOWER_MASK);
            mt[kk] = mt[kk+M] ^ (y >> 1) ^ mag01[y & 0x1UL];
        }
        for (; kk < N - 1; kk++) {
            y = (mt[kk] & UPPER_MASK) | (mt[kk+1] & LOWER_MASK);
            mt[kk] = mt[kk+(M-N)] ^ (y >> 1) ^ mag01[y & 0x1UL];
        }
        y = (mt[N-1] & UPPER_MASK) | (mt[0] & LOWER_MASK);
        mt[N-1] = mt[M-1] ^ (y >> 1) ^ mag01[y & 0x1UL];
        mti = 0;
    }

    y = mt[mti++];
    y ^= (y >> 11);
    y ^= (y << 7) & 0x9d2c5680UL;
    y ^= (y << 15) & 0xefc60000UL;
    y ^= (y >> 18);
    return y;
}

int main(int argc, char **argv)
{
    unsigned long seed = 5489UL;
    long count = 10000, i;
    const char *mode = "int32";

    if (argc > 1) seed = strtoul(argv[1], NULL, 10);
    if (argc > 2) count = strtol(argv[2], NULL, 10);
    if (argc > 3) mode = argv[3];

    init_genrand(seed);
    printf("seed=%lu\n", seed);
    if (mode[0] == 'r') {
        for (i = 0; i < count; i++) {
            unsigned long a = genrand_int32() >> 5, b = genrand_int32() >> 6;
            /* 53-bit numerator a*2^26 + b, printed exactly */
            printf("%llu\n", (unsigned long long)a * 67108864ULL + b);
        }
    } else {
        for (i = 0; i < count; i++)
            printf("%lu\n", genrand_int32());
    }
    return 0;
}
