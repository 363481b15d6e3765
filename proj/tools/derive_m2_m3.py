#!/usr/bin/env python3
"""Build the 13-dimensional weak Hopf algebra M2 + M3 from the Fibonacci fusion rules.

The algebra is End(F(1)) + End(F(tau)) where F(X) is spanned by the pairs (m, k)
with m appearing in k (x) X. The coproduct comes from the F-matrix
F^{tau tau tau}_tau = [[1/phi, phi^-1/2], [phi^-1/2, -1/phi]] acting on the
fusion spaces; everything else is trivial.

Usage: derive_m2_m3.py [output.wha.json]
"""
import json
import sys

import numpy as np

PHI = (1 + 5 ** 0.5) / 2
FTAU = np.array([[1 / PHI, PHI ** -0.5], [PHI ** -0.5, -1 / PHI]])

# N[x, y, z] = multiplicity of z in x (x) y; 0 is the unit, 1 is tau
N = np.zeros((2, 2, 2), dtype=int)
N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = N[1, 1, 1] = 1

STATES = {x: [(m, k) for m in (0, 1) for k in (0, 1) if N[x, k, m]] for x in (0, 1)}
BASIS = [(x, s, t) for x in (0, 1) for s in range(len(STATES[x])) for t in range(len(STATES[x]))]
INDEX = {b: i for i, b in enumerate(BASIS)}
DIM = len(BASIS)


def f_symbol(a, b, c, d, k, z):
    return FTAU[k, z] if a == b == c == d == 1 else 1.0


def fusion_map(x, y):
    """Map F(x) (x) F(y) onto the channels (z, state of F(z))."""
    dx, dy = len(STATES[x]), len(STATES[y])
    rows = [(z, j) for z in (0, 1) if N[x, y, z] for j in range(len(STATES[z]))]
    w = np.zeros((len(rows), dx * dy))
    for i, (m, k) in enumerate(STATES[x]):
        for j, (k2, n) in enumerate(STATES[y]):
            if k != k2:
                continue
            for r, (z, zz) in enumerate(rows):
                if STATES[z][zz] == (m, n):
                    w[r, i * dy + j] += f_symbol(x, y, n, m, k, z)
    return w, rows


def build():
    n = DIM
    c = np.zeros((n, n, n))
    for (x, s, t) in BASIS:
        for (y, u, v) in BASIS:
            if x == y and t == u:
                c[INDEX[(x, s, t)], INDEX[(y, u, v)], INDEX[(x, s, v)]] = 1
    unit = np.zeros(n)
    for x in (0, 1):
        for s in range(len(STATES[x])):
            unit[INDEX[(x, s, s)]] = 1

    delta = np.zeros((n * n, n))
    for a, (z0, s0, t0) in enumerate(BASIS):
        for x in (0, 1):
            for y in (0, 1):
                w, rows = fusion_map(x, y)
                target = np.zeros((len(rows), len(rows)))
                for r1, (z, z1) in enumerate(rows):
                    for r2, (z2, zz2) in enumerate(rows):
                        if z == z2 == z0 and z1 == s0 and zz2 == t0:
                            target[r1, r2] = 1
                big = w.T @ target @ w
                dx, dy = len(STATES[x]), len(STATES[y])
                for i in range(dx):
                    for j in range(dx):
                        for k in range(dy):
                            for l in range(dy):
                                delta[INDEX[(x, i, j)] * n + INDEX[(y, k, l)], a] = big[i * dy + k, j * dy + l]

    counit = np.array([1.0 if x == 0 else 0.0 for (x, _, _) in BASIS])
    star = np.zeros((n, n))
    for (x, s, t) in BASIS:
        star[INDEX[(x, t, s)], INDEX[(x, s, t)]] = 1
    return c, unit, delta, counit, star


def pairs(v):
    return [[float(z), 0.0] for z in v]


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "fixtures/m2_m3.wha.json"
    c, unit, delta, counit, star = build()
    n = DIM
    labels = [f"{'ab'[x]}{s}{t}" for (x, s, t) in BASIS]
    doc = {
        "schema_version": 1,
        "kind": "wha",
        "dim": n,
        "basis_labels": labels,
        "structure_constants": [[pairs(c[i, j]) for j in range(n)] for i in range(n)],
        "unit": pairs(unit),
        "comultiplication": [pairs(delta[r]) for r in range(n * n)],
        "counit": pairs(counit),
        "involution": [pairs(star[i]) for i in range(n)],
        "metadata": {
            "name": "M2+M3",
            "provenance": "Fibonacci fusion rules and F-matrix, generated by tools/derive_m2_m3.py",
        },
    }
    with open(out, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
