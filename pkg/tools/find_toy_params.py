"""Search for small maximal-period parameter sets and verify the frozen ones.

A parameter set has maximal period 2**p - 1 iff the transition matrix B
satisfies B**(2**p - 1) = I and B**((2**p - 1)/q) != I for every prime q
dividing 2**p - 1.  Matrices are lists of row ints over the p state bits.

Run:  python3 tools/find_toy_params.py
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from mtkit.params import GeneratorParams, TOY12, TOY13, TOY16  # noqa: E402
from mtkit.symbolic import SymbolicState  # noqa: E402

PRIME_FACTORS = {
    12: [3, 5, 7, 13],          # 4095
    13: [8191],                 # prime
    16: [3, 5, 17, 257],        # 65535
}


def transition_rows(params):
    sym = SymbolicState(params)
    before = [list(w) for w in sym.words]
    new = sym.step_word()
    rows = []
    rows.extend(before[1][: params.w - params.r])
    for i in range(2, params.n):
        rows.extend(before[i])
    rows.extend(new)
    return rows


def mat_mul(a, b):
    # row i of a*b is the XOR of the rows of b selected by the set bits of a[i]
    out = []
    for row in a:
        acc = 0
        x = row
        while x:
            low = x & -x
            acc ^= b[low.bit_length() - 1]
            x ^= low
        out.append(acc)
    return out


def mat_pow(rows, e, p):
    result = [1 << i for i in range(p)]
    base = rows
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def is_identity(rows):
    return all(row == 1 << i for i, row in enumerate(rows))


def maximal_period(params):
    p = params.p
    period = (1 << p) - 1
    rows = transition_rows(params)
    if not is_identity(mat_pow(rows, period, p)):
        return False
    for q in PRIME_FACTORS[p]:
        if is_identity(mat_pow(rows, period // q, p)):
            return False
    return True


def search(w, n, m, r, label):
    found = []
    for a in range(1 << (w - 1), 1 << w):
        try:
            cand = GeneratorParams(w=w, n=n, m=m, r=r, a=a,
                                   u=2, d=(1 << w) - 1, s=1,
                                   b=0x6 & ((1 << w) - 1), t=2,
                                   c=0xC & ((1 << w) - 1), l=3, f=181)
        except ValueError:
            continue
        if maximal_period(cand):
            found.append(a)
    print(f"{label}: maximal-period twist vectors: {[hex(a) for a in found]}")
    return found


if __name__ == "__main__":
    for params, name in ((TOY12, "TOY12"), (TOY13, "TOY13"), (TOY16, "TOY16")):
        ok = maximal_period(params)
        print(f"{name} (w={params.w} n={params.n} m={params.m} r={params.r} "
              f"a={params.a:#x} p={params.p}): maximal={ok}")
    print()
    search(4, 3, 1, 0, "w=4 n=3 m=1 r=0 (p=12)")
    search(4, 4, 2, 3, "w=4 n=4 m=2 r=3 (p=13)")
    search(6, 3, 1, 2, "w=6 n=3 m=1 r=2 (p=16)")
