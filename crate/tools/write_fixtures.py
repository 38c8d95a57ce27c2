"""Assemble data/fricke_params.json and data/families.json.

usage: python3 write_fixtures.py DATADIR GENUS_ZERO_JSON...
Each GENUS_ZERO_JSON is output of derive_families.py; without any, only the Fricke file is written.
"""
import json
import sys

from sympy import Poly, cancel, fraction

from fricke_table import FRICKE, LEVELS, MEMBERS, edges, t

SPORADIC = {
    11: [(-1149984, -487018224), (-9504, 365904), (-395307, 373960422), (-38907, -2953962)],
    14: [(-2361555, 1396762542), (-138915, 24504606), (-48195, -4072194), (-2835, -71442)],
    15: [(-162675, -25254450), (-675, -79650), (712125, -104861250), (-97875, 14208750)],
    17: [(-247394115, -1679010134850), (-3940515, 3010787550)],
    19: [(-219488, -39617584), (-608, 5776)],
    21: [(-1396035, 634881726), (-1104435, 907504398), (3645, -13122), (-54675, -5156946)],
    27: [(-4320, -109296), (0, -432), (0, 16), (-480, 4048)],
    37: [(-269675595, -1704553285050), (-10395, 444150)],
    43: [(-25442240, -49394836848), (-13760, 621264)],
    67: [(-529342880, -4687634371504), (-117920, 15585808)],
    163: [(-924354639680, -342062961763303088), (-34790720, 78984748304)],
}


def sporadic_edges(n):
    if n == 11:
        return [(1, 2, 11), (3, 4, 11)]
    if n in (14, 15, 21):
        p, q = {14: (2, 7), 15: (3, 5), 21: (3, 7)}[n]
        return [(1, 2, p), (1, 3, q), (2, 4, q), (3, 4, p)]
    if n == 27:
        return [(1, 2, 3), (2, 3, 3), (3, 4, 3)]
    return [(1, 2, n)]


def matrix(n):
    r = {9: 3, 25: 5}.get(n)
    # n = 11 is two disjoint 2-member classes sharing one matrix
    if n in (2, 3, 5, 7, 11, 13, 17, 19, 37, 43, 67, 163):
        return [[1, n], [n, 1]]
    if r:
        return [[1, r, n], [r, 1, r], [n, r, 1]]
    if n in (6, 10):
        h = n // 2
        return [[1, 2, h, n], [2, 1, n, h], [h, n, 1, 2], [n, h, 2, 1]]
    if n in (14, 15, 21):
        p, q = {14: (2, 7), 15: (3, 5), 21: (3, 7)}[n]
        return [[1, p, q, n], [p, 1, n, q], [q, n, 1, p], [n, q, p, 1]]
    return {
        4: [[1, 2, 2, 2], [2, 1, 4, 4], [2, 4, 1, 4], [2, 4, 4, 1]],
        8: [[1, 2, 2, 2, 4, 4], [2, 1, 4, 4, 8, 8], [2, 4, 1, 4, 8, 8],
            [2, 4, 4, 1, 2, 2], [4, 8, 8, 2, 1, 4], [4, 8, 8, 2, 4, 1]],
        # (3,5) printed as 6; 3-1-5 is two 2-isogenies through the full 2-torsion of C_{12,1}
        12: [[1, 3, 2, 6, 2, 6, 2, 6], [3, 1, 6, 2, 6, 2, 6, 2], [2, 6, 1, 3, 4, 12, 4, 12],
             [6, 2, 3, 1, 12, 4, 12, 4], [2, 6, 4, 12, 1, 3, 4, 12], [6, 2, 12, 4, 3, 1, 12, 4],
             [2, 6, 4, 12, 4, 12, 1, 3], [6, 2, 12, 4, 12, 4, 3, 1]],
        16: [[1, 2, 2, 2, 4, 4, 8, 8], [2, 1, 4, 4, 8, 8, 16, 16], [2, 4, 1, 4, 8, 8, 16, 16],
             [2, 4, 4, 1, 2, 2, 4, 4], [4, 8, 8, 2, 1, 4, 8, 8], [4, 8, 8, 2, 4, 1, 2, 2],
             [8, 16, 16, 4, 8, 2, 1, 4], [8, 16, 16, 4, 8, 2, 4, 1]],
        18: [[1, 2, 3, 6, 9, 18], [2, 1, 6, 3, 18, 9], [3, 6, 1, 2, 3, 6],
             [6, 3, 2, 1, 6, 3], [9, 18, 3, 6, 1, 2], [18, 9, 6, 3, 2, 1]],
        27: [[1, 3, 9, 27], [3, 1, 3, 9], [9, 3, 1, 3], [27, 9, 3, 1]],
    }[n]


def coeffs(p):
    c = Poly(p, t).all_coeffs()[::-1]
    return [str(int(v)) for v in c]


def main():
    out_dir = sys.argv[1]
    fricke = []
    for n in LEVELS:
        for i in (1, 2):
            num, den = fraction(cancel(FRICKE[n][i - 1]))
            fricke.append({"n": n, "i": i, "num": coeffs(num), "den": coeffs(den)})
    with open(f"{out_dir}/fricke_params.json", "w") as fh:
        fh.write("[\n" + ",\n".join(json.dumps(e) for e in fricke) + "\n]\n")

    if len(sys.argv) == 2:
        return
    gz = []
    for path in sys.argv[2:]:
        gz.extend(json.load(open(path)))
    gz.sort(key=lambda e: (e["n"], e["i"]))
    assert sorted({e["n"] for e in gz}) == LEVELS, "missing genus-zero levels"
    for n in LEVELS:
        assert sum(e["n"] == n for e in gz) == MEMBERS[n]
    fam = list(gz)
    for n, rows in SPORADIC.items():
        for i, (a, b) in enumerate(rows, 1):
            fam.append({"n": n, "i": i, "A": str(a), "B": str(b)})
    for n in sorted(LEVELS + list(SPORADIC)):
        es = edges(n) if n in MEMBERS else sporadic_edges(n)
        fam.append({"n": n, "edges": [list(e) for e in es], "matrix": matrix(n)})
    with open(f"{out_dir}/families.json", "w") as fh:
        fh.write("[\n")
        fh.write(",\n".join(json.dumps(e) for e in fam))
        fh.write("\n]\n")


if __name__ == "__main__":
    main()
