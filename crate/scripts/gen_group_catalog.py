"""Writes data/groups.jsonl: transitive permutation groups of degree <= 12.

Orders and nilpotence come from sympy's permutation groups, which serve as
an independent reference for the Rust implementation.
"""
import itertools
import json
import sys

from sympy.combinatorics import Permutation, PermutationGroup


def cyc(n, *cycles):
    img = list(range(n))
    for c in cycles:
        for i, x in enumerate(c):
            img[x] = c[(i + 1) % len(c)]
    return img


def cyclic(n):
    return [cyc(n, tuple(range(n)))]


def dihedral(n):
    return cyclic(n) + [[(n - i) % n for i in range(n)]]


def symmetric(n):
    return [cyc(n, (0, 1)), cyc(n, tuple(range(n)))]


def alternating(n):
    return [cyc(n, (0, 1, k)) for k in range(2, n)]


def affine(p, mults):
    """x -> x + 1 and x -> a x on Z/p."""
    return [cyc(p, tuple(range(p)))] + [[(a * x) % p for x in range(p)] for a in mults]


def regular(elements, gens, mul):
    """Right regular representation of a group given by an element list."""
    idx = {e: i for i, e in enumerate(elements)}
    return [[idx[mul(e, g)] for e in elements] for g in gens]


def product_action(g1, n1, g2, n2):
    """Direct product acting on pairs (i, j) -> i * n2 + j."""
    out = []
    for g in g1:
        out.append([g[i] * n2 + j for i in range(n1) for j in range(n2)])
    for g in g2:
        out.append([i * n2 + g[j] for i in range(n1) for j in range(n2)])
    return out


def wreath(h, m, k, top):
    """H wr K in imprimitive action on m * k points: H acts on the first
    copy, K permutes the copies."""
    n = m * k
    out = []
    for g in h:
        out.append([g[x] if x < m else x for x in range(n)])
    for t in top:
        out.append([t[x // m] * m + x % m for x in range(n)])
    return out


def mod_group(mods):
    elems = list(itertools.product(*[range(m) for m in mods]))
    add = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, mods))
    gens = []
    for i in range(len(mods)):
        g = [0] * len(mods)
        g[i] = 1
        gens.append(tuple(g))
    return regular(elems, gens, add), len(elems)


def quaternion():
    # elements (s, k): s in {1,-1}, k in {1,i,j,k} as ints 0..3
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, u) for s in (1, -1) for u in range(4)]

    def mul(a, b):
        s, u = table[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    return regular(elems, [(1, 1), (1, 2)], mul)


def semidirect_regular(n, a, r):
    """Regular representation of C_n x| C_r with y x y^-1 = x^a."""
    elems = [(i, j) for j in range(r) for i in range(n)]

    def mul(p, q):
        return ((p[0] + pow(a, p[1], n) * q[0]) % n, (p[1] + q[1]) % r)

    return regular(elems, [(1, 0), (0, 1)], mul)


def heisenberg3():
    pts = [(x, y) for x in range(3) for y in range(3)]
    idx = {p: i for i, p in enumerate(pts)}
    t = [idx[((x + 1) % 3, y)] for x, y in pts]
    s = [idx[(x, (y + x) % 3)] for x, y in pts]
    return [t, s]


def psl27_on_7():
    return [cyc(7, tuple(range(7))), cyc(7, (0, 1), (4, 6))]


def pgl2(q):
    """PGL(2, q) on the projective line for prime q; points 0..q-1, inf=q."""
    inf = q

    def act(a, b, c, d):
        img = []
        for x in range(q + 1):
            if x == inf:
                img.append(inf if c == 0 else (a * pow(c, -1, q)) % q)
            else:
                den = (c * x + d) % q
                img.append(inf if den == 0 else ((a * x + b) * pow(den, -1, q)) % q)
        return img

    return act


def groups():
    yield from ((f"C{n}", n, cyclic(n)) for n in range(2, 13))
    yield from ((f"D{n}", n, dihedral(n)) for n in range(3, 13))
    yield from ((f"S{n}", n, symmetric(n)) for n in range(3, 9))
    yield from ((f"A{n}", n, alternating(n)) for n in range(4, 9))
    for mods in ([2, 2], [2, 2, 2], [3, 3], [2, 4], [2, 6], [2, 2, 3], [3, 4]):
        gens, n = mod_group(mods)
        yield ("x".join(f"C{m}" for m in mods) + "_regular", n, gens)
    yield ("Q8_regular", 8, quaternion())
    yield ("D4_regular", 8, semidirect_regular(4, 3, 2))
    yield ("QD16", 8, [cyc(8, tuple(range(8))), [(3 * x) % 8 for x in range(8)]])
    yield ("M16", 8, [cyc(8, tuple(range(8))), [(5 * x) % 8 for x in range(8)]])
    yield ("D8_on_8", 8, dihedral(8))
    yield ("S3_regular", 6, semidirect_regular(3, 2, 2))
    yield ("Dic3_regular", 12, semidirect_regular(3, 2, 4))
    yield ("D6_regular", 12, semidirect_regular(6, 5, 2))
    yield ("F20", 5, affine(5, [2]))
    yield ("F21", 7, affine(7, [2]))
    yield ("F42", 7, affine(7, [3]))
    yield ("F55", 11, affine(11, [3]))
    yield ("AGL1_11", 11, affine(11, [2]))
    yield ("C7:C3_on_7", 7, affine(7, [2]))
    yield ("PSL2_7_on_7", 7, psl27_on_7())
    yield ("PGL2_5_on_6", 6, [pgl2(5)(1, 1, 0, 1), pgl2(5)(0, 4, 1, 0), pgl2(5)(2, 0, 0, 1)])
    yield ("PSL2_5_on_6", 6, [pgl2(5)(1, 1, 0, 1), pgl2(5)(0, 4, 1, 0), pgl2(5)(4, 0, 0, 1)])
    yield ("PGL2_7_on_8", 8, [pgl2(7)(1, 1, 0, 1), pgl2(7)(0, 6, 1, 0), pgl2(7)(3, 0, 0, 1)])
    yield ("PSL2_7_on_8", 8, [pgl2(7)(1, 1, 0, 1), pgl2(7)(0, 6, 1, 0), pgl2(7)(2, 0, 0, 1)])
    yield ("PSL2_11_on_12", 12, [pgl2(11)(1, 1, 0, 1), pgl2(11)(0, 10, 1, 0), pgl2(11)(4, 0, 0, 1)])
    yield ("Heisenberg3_on_9", 9, heisenberg3())
    yield ("C2wrC2wrC2", 8, wreath(wreath(cyclic(2), 2, 2, cyclic(2)), 4, 2, cyclic(2)))
    yield ("C2wrC3", 6, wreath(cyclic(2), 2, 3, cyclic(3)))
    yield ("C3wrC2", 6, wreath(cyclic(3), 3, 2, cyclic(2)))
    yield ("S3wrC2", 6, wreath(symmetric(3), 3, 2, cyclic(2)))
    yield ("C2wrS3", 6, wreath(cyclic(2), 2, 3, symmetric(3)))
    yield ("C2wrC4", 8, wreath(cyclic(2), 2, 4, cyclic(4)))
    yield ("C4wrC2", 8, wreath(cyclic(4), 4, 2, cyclic(2)))
    yield ("S4wrC2", 8, wreath(symmetric(4), 4, 2, cyclic(2)))
    yield ("C3wrC3", 9, wreath(cyclic(3), 3, 3, cyclic(3)))
    yield ("S3wrC3", 9, wreath(symmetric(3), 3, 3, cyclic(3)))
    yield ("C2wrC5", 10, wreath(cyclic(2), 2, 5, cyclic(5)))
    yield ("C5wrC2", 10, wreath(cyclic(5), 5, 2, cyclic(2)))
    yield ("C3wrC4", 12, wreath(cyclic(3), 3, 4, cyclic(4)))
    yield ("C4wrC3", 12, wreath(cyclic(4), 4, 3, cyclic(3)))
    yield ("C2wrC6", 12, wreath(cyclic(2), 2, 6, cyclic(6)))
    yield ("C3xD4_on_12", 12, product_action(cyclic(3), 3, dihedral(4), 4))
    yield ("C4xC3_product_on_12", 12, product_action(cyclic(4), 4, cyclic(3), 3))
    yield ("C2xS3_on_6", 6, product_action(cyclic(2), 2, symmetric(3), 3))
    yield ("S3xS3_on_9", 9, product_action(symmetric(3), 3, symmetric(3), 3))
    yield ("C3xS3_on_9", 9, product_action(cyclic(3), 3, symmetric(3), 3))
    yield ("C3xC3_product_on_9", 9, product_action(cyclic(3), 3, cyclic(3), 3))
    yield ("D4xC2_on_8", 8, product_action(dihedral(4), 4, cyclic(2), 2))
    yield ("S4xC2_on_8", 8, product_action(symmetric(4), 4, cyclic(2), 2))
    yield ("A4xC3_on_12", 12, product_action(alternating(4), 4, cyclic(3), 3))
    yield ("D5xC2_on_10", 10, product_action(dihedral(5), 5, cyclic(2), 2))
    yield ("A5_on_10_pairs", 10, pairs_action(alternating(5), 5))
    yield ("S5_on_10_pairs", 10, pairs_action(symmetric(5), 5))
    yield ("A4_on_6_pairs", 6, pairs_action(alternating(4), 4))
    yield ("S4_on_6_pairs", 6, pairs_action(symmetric(4), 4))


def pairs_action(gens, n):
    pairs = list(itertools.combinations(range(n), 2))
    idx = {p: i for i, p in enumerate(pairs)}
    return [[idx[tuple(sorted((g[a], g[b])))] for a, b in pairs] for g in gens]


def cycle_string(img):
    seen = [False] * len(img)
    out = []
    for s in range(len(img)):
        if seen[s]:
            continue
        c = [s]
        seen[s] = True
        x = img[s]
        while x != s:
            seen[x] = True
            c.append(x)
            x = img[x]
        if len(c) > 1:
            out.append("(" + " ".join(map(str, c)) + ")")
    return "".join(out) or "()"


def main():
    out = open(sys.argv[1], "w") if len(sys.argv) > 1 else sys.stdout
    count = 0
    for name, n, gens in groups():
        gens = [g for g in gens if g != list(range(n))]
        G = PermutationGroup([Permutation(g) for g in gens]) if gens else None
        assert G is not None and G.is_transitive(), name
        assert all(len(g) == n for g in gens), name
        rec = {
            "name": name,
            "degree": n,
            "generators": [cycle_string(g) for g in gens],
            "order": int(G.order()),
            "nilpotent": bool(G.is_nilpotent),
            "solvable": bool(G.is_solvable),
        }
        out.write(json.dumps(rec) + "\n")
        count += 1
    print(count, "groups", file=sys.stderr)


if __name__ == "__main__":
    main()
