"""Regenerate data/phi/phi_j_<l>.txt for the genus-zero prime levels.

Phi_l(X, Y) is proportional to Res_t(N1 - X D1, N2 - Y D2) where j_{l,1} = N1/D1 and
j_{l,2} = N2/D2. The resultant is sampled on an integer grid and interpolated, then
scaled so the X^(l+1) coefficient is 1. Output follows the usual "[a,b] c" layout with a >= b.

usage: python3 derive_phi.py OUTDIR [l ...]
"""
import sys
from fractions import Fraction

from sympy import Poly, fraction, cancel, resultant

from fricke_table import FRICKE, t


def lagrange_coeffs(xs, ys):
    """Coefficients (low to high) of the interpolating polynomial through (xs, ys)."""
    n = len(xs)
    out = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            out[k] += ys[i] * basis[k] / denom
    return out


def phi(ell):
    N1, D1 = fraction(cancel(FRICKE[ell][0]))
    N2, D2 = fraction(cancel(FRICKE[ell][1]))
    N1, D1, N2, D2 = (Poly(p, t) for p in (N1, D1, N2, D2))
    pts = list(range(ell + 2))
    grid = {}
    for X in pts:
        f = N1 - D1 * X
        for Y in pts:
            g = N2 - D2 * Y
            grid[X, Y] = Fraction(int(resultant(f, g)))
    # interpolate in Y for each X, then in X for each Y-power
    rows = {X: lagrange_coeffs(pts, [grid[X, Y] for Y in pts]) for X in pts}
    coeffs = {}
    for b in range(ell + 2):
        col = lagrange_coeffs(pts, [rows[X][b] for X in pts])
        for a, c in enumerate(col):
            if c:
                coeffs[a, b] = c
    lead = coeffs[ell + 1, 0]
    out = {}
    for k, c in coeffs.items():
        v = c / lead
        assert v.denominator == 1, (ell, k, v)
        out[k] = int(v)
    for (a, b), c in out.items():
        assert out.get((b, a)) == c, ("asymmetric", ell, a, b)
    return out


def main():
    outdir = sys.argv[1]
    levels = [int(a) for a in sys.argv[2:]] or [2, 3, 5, 7, 13]
    for ell in levels:
        co = phi(ell)
        keys = sorted((k for k in co if k[0] >= k[1]), reverse=True)
        with open(f"{outdir}/phi_j_{ell}.txt", "w") as fh:
            for a, b in keys:
                fh.write(f"[{a},{b}] {co[a, b]}\n")
        print(f"phi {ell}: {len(keys)} lines", file=sys.stderr)


if __name__ == "__main__":
    main()
