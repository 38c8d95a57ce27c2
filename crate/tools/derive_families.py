"""Regenerate the genus-zero family table (data/families.json).

Each level starts from one member over Q(t) and walks the isogeny graph:
2- and 3-isogenies come from Q(t)-rational kernel points and Velu's formulas;
5-, 7- and 13-neighbours come from the derivative model
    naive(J) = (-J'^2 / (48 J (J-1728)), -J'^3 / (864 J^2 (J-1728)))
for which the neighbour reached by a cyclic m-isogeny is naive(J_m) twisted by m.
The resulting nodes are matched to the published graph (edge labels, k-indices).

Needs python-flint for polynomial gcd and factorisation over Q[t] and Z[x, t].
"""
import itertools
import json
import sys

import flint
from flint import fmpq, fmpq_poly, fmpz
from sympy import Poly, fraction, cancel

from fricke_table import FRICKE, K, LEVELS, MEMBERS, edges, t as T

XT = flint.fmpz_mpoly_ctx.get(("x", "t"), "lex")
ONE = fmpq_poly([1])
TPOLY = fmpq_poly([0, 1])


def lc(p):
    return p[p.degree()]


class RF:
    """Reduced quotient num/den in Q(t), den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=ONE):
        num = fmpq_poly(num)
        den = fmpq_poly(den)
        if den == 0:
            raise ZeroDivisionError("RF with zero denominator")
        if num == 0:
            self.num, self.den = fmpq_poly([]), ONE
            return
        g = num.gcd(den)
        if g.degree() > 0:
            num, den = divmod(num, g)[0], divmod(den, g)[0]
        c = lc(den)
        self.num, self.den = num / c, den / c

    @staticmethod
    def of(v):
        return v if isinstance(v, RF) else RF(fmpq_poly([v]))

    def __add__(self, o):
        o = RF.of(o)
        return RF(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RF(-self.num, self.den)

    def __sub__(self, o):
        return self + (-RF.of(o))

    def __rsub__(self, o):
        return RF.of(o) - self

    def __mul__(self, o):
        o = RF.of(o)
        return RF(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = RF.of(o)
        return RF(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return RF.of(o) / self

    def __pow__(self, e):
        return RF(self.num ** e, self.den ** e)

    def is_zero(self):
        return self.num == 0

    def is_poly(self):
        return self.den.degree() == 0

    def deriv(self):
        return RF(self.num.derivative() * self.den - self.num * self.den.derivative(), self.den ** 2)

    def compose(self, s):
        """self(s(t)) for a rational function s."""
        def hom(p, d):
            acc = fmpq_poly([])
            for k in range(p.degree() + 1):
                if p[k] != 0:
                    acc += p[k] * s.num ** k * s.den ** (d - k)
            return acc
        d = max(self.num.degree(), self.den.degree())
        return RF(hom(self.num, d), hom(self.den, d))

    def __eq__(self, o):
        o = RF.of(o)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    def __repr__(self):
        return f"({self.num})/({self.den})"


def from_sympy(expr):
    n, d = fraction(cancel(expr))
    def conv(p):
        cs = Poly(p, T).all_coeffs()[::-1]
        return fmpq_poly([fmpq(int(c.p), int(c.q)) for c in cs])
    return RF(conv(n), conv(d))


def naive(J):
    Jp = J.deriv()
    return -(Jp ** 2) / (48 * J * (J - 1728)), -(Jp ** 3) / (864 * J ** 2 * (J - 1728))


def jinv(A, B):
    return 6912 * A ** 3 / (4 * A ** 3 + 27 * B ** 2)


def divides(f, p):
    return divmod(p, f)[1] == 0


def poly_part(A, B):
    """u-scale a model over Q(t) to polynomial coefficients without removable fourth/sixth powers."""
    u = RF(A.den * B.den)
    A, B = A * u ** 4, B * u ** 6
    while True:
        changed = False
        g = A.num.gcd(B.num) if not A.is_zero() and not B.is_zero() else (A.num if B.is_zero() else B.num)
        if g.degree() > 0:
            for f, _ in g.factor()[1]:
                if f.degree() == 0:
                    continue
                if divides(f ** 4, A.num) and divides(f ** 6, B.num):
                    A, B = RF(divmod(A.num, f ** 4)[0]), RF(divmod(B.num, f ** 6)[0])
                    changed = True
        if not changed:
            return A, B


def rat_content(p):
    """Positive rational content of a polynomial over Q."""
    num, den = 0, 1
    for k in range(p.degree() + 1):
        c = p[k]
        if c != 0:
            num = flint.fmpz(num).gcd(c.p) if num else abs(c.p)
            den = den * c.q // flint.fmpz(den).gcd(c.q)
    return fmpq(int(num), int(den))


def val(p, c):
    if c.p == 0:
        return 10 ** 9
    v, a, b = 0, int(c.p), int(c.q)
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def scale_constants(A, B, reduce=True):
    """Rescale by a rational u so that A, B are integral; with reduce, also strip u^4, u^6."""
    cA = rat_content(A.num) if not A.is_zero() else None
    cB = rat_content(B.num) if not B.is_zero() else None
    primes = set()
    for c in (cA, cB):
        if c is not None:
            for q in (c.p, c.q):
                if abs(q) > 1:
                    primes |= {int(p) for p, _ in fmpz(q).factor()}
    u = fmpq(1)
    for p in sorted(primes):
        need = []
        if cA is not None:
            need.append(-(val(p, cA) // 4))
        if cB is not None:
            need.append(-(val(p, cB) // 6))
        e = max(need)
        if not reduce:
            e = max(e, 0)
        u *= fmpq(p) ** e
    return A * u ** 4, B * u ** 6


def twist_minimal(A, B):
    """Twist a polynomial model by polynomial/constant factors to remove q^2 | A, q^3 | B."""
    A, B = poly_part(A, B)
    while True:
        changed = False
        g = A.num.gcd(B.num)
        if g.degree() > 0:
            for f, _ in g.factor()[1]:
                if f.degree() == 0:
                    continue
                if divides(f ** 2, A.num) and divides(f ** 3, B.num):
                    A, B = RF(divmod(A.num, f ** 2)[0]), RF(divmod(B.num, f ** 3)[0])
                    changed = True
        if not changed:
            break
    cA, cB = rat_content(A.num), rat_content(B.num)
    L = int(cA.q) * int(cB.q) // int(fmpz(cA.q).gcd(cB.q))
    A, B = A * L ** 2, B * L ** 3
    cA, cB = rat_content(A.num), rat_content(B.num)
    g = fmpz(cA.p).gcd(cB.p)
    if abs(g) > 1:
        for p, _ in fmpz(g).factor():
            p = int(p)
            while val(p, cA) >= 2 and val(p, cB) >= 3:
                A, B = A / p ** 2, B / p ** 3
                cA, cB = rat_content(A.num), rat_content(B.num)
    if lc(B.num) < 0:
        B = -B
    return scale_constants(A, B)


def linear_x_roots(coeffs):
    """Roots in Q(t) of sum_k coeffs[k] x^k, coeffs in Q(t)."""
    L = RF(ONE)
    for c in coeffs:
        L = RF(L.num * c.den)
    deg = len(coeffs) - 1
    # X = L x turns the equation into one with polynomial coefficients.
    polys = [(coeffs[k] * L ** (deg - k)) for k in range(deg + 1)]
    den = 1
    for p in polys:
        assert p.is_poly()
        den = den * int(p.num.denom()) // int(fmpz(den).gcd(p.num.denom()))
    terms = {}
    for k, p in enumerate(polys):
        q = p.num * den
        for e in range(q.degree() + 1):
            if q[e] != 0:
                terms[(k, e)] = int(q[e].p)
    poly = XT.from_dict(terms)
    out = []
    for fac, _ in poly.factor()[1]:
        d = fac.to_dict()
        if max(k for k, _ in d) != 1:
            continue
        c1 = fmpq_poly([0] * 1)
        c0 = fmpq_poly([0] * 1)
        for (k, e), c in d.items():
            mono = fmpq_poly([0] * e + [int(c)])
            if k == 1:
                c1 += mono
            else:
                c0 += mono
        out.append(RF(-c0, c1) / L)
    return out


def velu_nodes(A, B):
    """All Q(t)-rational 2- and 3-isogenous codomains of y^2 = x^3 + A x + B."""
    out = []
    zero = RF(fmpq_poly([]))
    for x0 in linear_x_roots([B, A, zero, RF(ONE)]):
        tq = 3 * x0 ** 2 + A
        w = x0 * tq
        out.append((2, A - 5 * tq, B - 7 * w))
    psi3 = [-(A ** 2), 12 * B, 6 * A, zero, RF(fmpq_poly([3]))]
    for x0 in linear_x_roots(psi3):
        y2 = x0 ** 3 + A * x0 + B
        tq = 6 * x0 ** 2 + 2 * A
        w = 4 * y2 + x0 * tq
        out.append((3, A - 5 * tq, B - 7 * w))
    return out


def twist_param(ref, other):
    """delta with other ~ ref twisted by delta (both with A, B nonzero)."""
    A1, B1 = ref
    A2, B2 = other
    return B1 * A2 / (A1 * B2)


def is_square_poly(p):
    c, facs = p.factor()
    if any(m % 2 for _, m in facs):
        return False
    c = fmpq(c)
    return c >= 0 and all(int(fmpz(v).isqrt()) ** 2 == int(v) for v in (c.p, c.q))


def is_square(r):
    return is_square_poly(r.num * r.den)


def same_node(m1, m2):
    if jinv(*m1) != jinv(*m2):
        return False
    return is_square(twist_param(m1, m2))


def fricke(n, k):
    return from_sympy(FRICKE[n][k])


def s25():
    tt = TPOLY
    return RF((tt - 1) ** 5, tt ** 4 + tt ** 3 + 6 * tt ** 2 + 6 * tt + 11)


def seed(n):
    a = RF(ONE)
    b = RF(TPOLY)
    z = RF(fmpq_poly([]))
    if n == 4:
        a1, a2, a3, a4, a6 = z, b - 16 * a, z, -16 * a * b, z
    elif n == 6:
        a1, a2, a3, a4, a6 = 36 * a + 5 * b, 2 * b * (9 * a + b), 9 * b * (8 * a + b) * (9 * a + b), z, z
    elif n == 9:
        a1, a2, a3, a4, a6 = 3 * (6 * a + b), z, (b - 3 * a) ** 3, z, z
    else:
        return twist_minimal(*naive(fricke(n, 0)))
    b2 = a1 ** 2 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 ** 2 + 4 * a6
    c4 = b2 ** 2 - 24 * b4
    c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
    return scale_constants(-c4 / 48, -c6 / 864)


def derived_members(n, start):
    """Members reached from the j(tau) member by the derivative rule (cyclic degree m -> twist m)."""
    nA, nB = naive(fricke(n, 0))
    delta = twist_param((nA, nB), start)
    targets = [(fricke(n, 1), n)]
    if n == 25:
        targets.append((fricke(5, 1).compose(s25()), 5))
    out = []
    for J, m in targets:
        mA, mB = naive(J)
        d = m * delta
        A2, B2 = poly_part(mA * d ** 2, mB * d ** 3)
        out.append(scale_constants(A2, B2))
    return out


def derive(n):
    start = seed(n)
    nodes = [start]
    if n not in (4, 6, 9):
        for m in derived_members(n, start):
            if not any(same_node(m, o) for o in nodes):
                nodes.append(m)
    edge_set = set()
    queue = list(range(len(nodes)))
    while queue:
        i = queue.pop(0)
        A, B = nodes[i]
        for ell, A2, B2 in velu_nodes(A, B):
            if n % ell:
                continue
            A2, B2 = poly_part(A2, B2)
            k = next((idx for idx, m in enumerate(nodes) if same_node(m, (A2, B2))), None)
            if k is None:
                nodes.append((A2, B2))
                k = len(nodes) - 1
                queue.append(k)
                if len(nodes) > MEMBERS[n]:
                    raise SystemExit(f"level {n}: too many nodes")
            edge_set.add((min(i, k), max(i, k), ell))
    if len(nodes) != MEMBERS[n]:
        raise SystemExit(f"level {n}: found {len(nodes)} nodes, expected {MEMBERS[n]}")
    return nodes, edge_set


def match(n, nodes, edge_set):
    k1, k2 = K[n]
    j1 = fricke(n, 0)
    j2 = fricke(n, 1)
    target = {(min(a, b) - 1, max(a, b) - 1, l) for a, b, l in edges(n) if l in (2, 3)}
    js = [jinv(*m) for m in nodes]
    j25 = fricke(5, 1).compose(s25()) if n == 25 else None
    sols = []
    m = len(nodes)
    for perm in itertools.permutations(range(m)):
        if {(min(perm[a], perm[b]), max(perm[a], perm[b]), l) for a, b, l in edge_set} != target:
            continue
        inv = {perm[a]: a for a in range(m)}
        if js[inv[k1 - 1]] != j1 or js[inv[k2 - 1]] != j2:
            continue
        if n == 25 and js[inv[1]] != j25:
            continue
        sols.append(perm)
    if len(sols) != 1:
        labels = {tuple(repr(js[{p[a]: a for a in range(m)}[i]]) for i in range(m)) for p in sols}
        if len(sols) == 0 or len(labels) != 1:
            raise SystemExit(f"level {n}: {len(sols)} labelings")
    perm = sols[0]
    inv = {perm[a]: a for a in range(m)}
    return [nodes[inv[i]] for i in range(m)]


def coeff_list(p):
    assert p.is_poly() and p.num.denom() == 1
    q = p.num
    if q == 0:
        return ["0"]
    return [str(int(q[k].p)) for k in range(q.degree() + 1)]


def main():
    levels = [int(a) for a in sys.argv[1:]] or LEVELS
    out = []
    for n in levels:
        nodes, es = derive(n)
        members = match(n, nodes, es)
        for i, (A, B) in enumerate(members, 1):
            A, B = scale_constants(A, B, reduce=False)
            out.append({"n": n, "i": i, "A": coeff_list(A), "B": coeff_list(B)})
        print(f"level {n}: ok", file=sys.stderr)
    json.dump(out, sys.stdout, indent=None)


if __name__ == "__main__":
    main()
