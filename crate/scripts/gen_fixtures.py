#!/usr/bin/env python3
"""Write the bundled b-files under crates/cli/fixtures.

Every term is recomputed here from its defining formula with plain Python
integers (math.comb, bit operations, explicit base-3 digit loops), so the
fixtures do not depend on the Rust code they are used to check.
"""
import math
import os

TERMS = 60
OUT = os.path.join(os.path.dirname(__file__), "..", "crates", "cli", "fixtures")


def row_value(n, p):
    return sum((math.comb(n, k) % p) * p**k for k in range(n + 1))


def digits(n, p):
    out = []
    while n:
        out.append(n % p)
        n //= p
    return out


def nim_add(a, b, p):
    da, db = digits(a, p), digits(b, p)
    width = max(len(da), len(db))
    da += [0] * (width - len(da))
    db += [0] * (width - len(db))
    return sum(((x + y) % p) * p**i for i, (x, y) in enumerate(zip(da, db)))


def evil(count):
    out, n = [], 0
    while len(out) < count:
        if bin(n).count("1") % 2 == 0:
            out.append(n)
        n += 1
    return out


SEQUENCES = {
    "A001317": ("rows of Pascal's triangle mod 2 read in binary", 0,
                [row_value(n, 2) for n in range(TERMS)]),
    "A001969": ("evil numbers", 0, evil(TERMS)),
    "A003188": ("binary Gray code n XOR floor(n/2)", 0,
                [n ^ (n >> 1) for n in range(TERMS)]),
    "A019434": ("Fermat primes, known terms only", 1, [3, 5, 17, 257, 65537]),
    "A048724": ("n XOR 2n", 0, [n ^ (2 * n) for n in range(TERMS)]),
    "A071770": ("ternary digitwise sum of n and floor(n/3)", 0,
                [nim_add(n, n // 3, 3) for n in range(TERMS)]),
    "A173019": ("rows of Pascal's triangle mod 3 read in ternary", 0,
                [row_value(n, 3) for n in range(TERMS)]),
    "A242399": ("ternary digitwise sum of n and 3n", 0,
                [nim_add(n, 3 * n, 3) for n in range(TERMS)]),
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for oeis_id, (title, offset, values) in SEQUENCES.items():
        path = os.path.join(OUT, "b" + oeis_id[1:] + ".txt")
        with open(path, "w") as f:
            f.write(f"# {oeis_id}: {title}\n")
            f.write("# generated offline from the definition by scripts/gen_fixtures.py\n")
            for i, v in enumerate(values):
                f.write(f"{i + offset} {v}\n")


if __name__ == "__main__":
    main()
