"""Writes data/corpus.jsonl: polynomials with oracle-derived expectations.

Expectations come from `galnil --expect-from-oracle`. For irreducible
entries of degree <= 6 the oracle is cross-checked against sympy's Galois
group computation (order, nilpotence, solvability); any mismatch aborts.

Usage: python3 scripts/gen_corpus.py [path/to/galnil]
"""
import json
import re
import random
import subprocess
import sys
from pathlib import Path

from sympy import Poly, factor_list, symbols, sympify
from sympy.polys.numberfields.galoisgroups import galois_group

x = symbols("x")
ROOT = Path(__file__).resolve().parent.parent

NAMED = [
    ("x^2+1", "x^2 + 1"),
    ("S3 pure cubic", "x^3 - 2"),
    ("cyclic cubic", "x^3 - 3x - 1"),
    ("D4 pure quartic", "x^4 - 2"),
    ("Phi8", "x^4 + 1"),
    ("Phi5", "x^4 + x^3 + x^2 + x + 1"),
    ("Phi7", "x^6 + x^5 + x^4 + x^3 + x^2 + x + 1"),
    ("D6 pure sextic", "x^6 - 2"),
    ("S5 trinomial", "x^5 - x - 1"),
    ("S3 cubic", "x^3 - x - 1"),
    ("V4 quartic", "x^4 - 10x^2 + 1"),
    ("A4 quartic", "x^4 + 8x + 12"),
    ("S4 quartic", "x^4 - x - 1"),
    ("F20 pure quintic", "x^5 - 2"),
    ("A5 quintic", "x^5 + 20x + 16"),
    ("Phi11 real subfield", "x^5 + x^4 - 4x^3 - 3x^2 + 3x + 1"),
    ("x^6+3", "x^6 + 3"),
    ("Phi9", "x^6 + x^3 + 1"),
    ("S6 trinomial", "x^6 - x - 1"),
    ("x^6+108", "x^6 + 108"),
    ("Phi15", "x^8 - x^7 + x^5 - x^4 + x^3 - x + 1"),
    ("Phi16", "x^8 + 1"),
    ("Phi20", "x^8 - x^6 + x^4 - x^2 + 1"),
    ("Phi24", "x^8 - x^4 + 1"),
    ("pure octic 2", "x^8 - 2"),
    ("pure octic 3", "x^8 - 3"),
    ("Q8 octic", "x^8 - 72x^6 + 180x^4 - 144x^2 + 36"),
    ("Klein four product", "x^4 - x^2 - 2"),
    ("S3 times quadratic", "x^5 + 3x^3 - 2x^2 - 6"),
    ("x^7-1", "x^7 - 1"),
    ("cube and fourth roots of 2", "x^7 - 2x^4 - 2x^3 + 4"),
    ("Phi8 times pure quartic", "x^8 - x^4 - 2"),
    ("repeated factor", "x^4 + 2x^2 + 1"),
]

RANDOM_COUNT = 20
SEED = 20261015


def random_polys():
    rng = random.Random(SEED)
    out = []
    while len(out) < RANDOM_COUNT:
        n = rng.randint(2, 6)
        coeffs = [rng.randint(-5, 5) for _ in range(n)] + [1]
        if coeffs[0] == 0:
            continue
        text = " ".join(str(c) for c in coeffs)
        if text not in [t for _, t in out]:
            out.append((f"random {len(out) + 1}", text))
    return out


def to_sympy(text):
    if "x" in text:
        return Poly(sympify(re.sub(r"(\d)x", r"\1*x", text).replace("^", "**")), x)
    coeffs = [int(c) for c in text.split()]
    return Poly(list(reversed(coeffs)), x)


def sympy_check(text, expect):
    f = to_sympy(text)
    _, facs = factor_list(f.as_expr())
    if len(facs) != 1 or facs[0][1] != 1 or Poly(facs[0][0], x).degree() > 6:
        return False
    g, _ = galois_group(Poly(facs[0][0], x), by_name=False)
    order = g.order()
    primes = sorted(p for p in range(2, 721) if order % p == 0 and all(p % q for q in range(2, p)))
    ok = (
        g.is_nilpotent == expect["nilpotent"]
        and g.is_solvable == expect["solvable"]
        and primes == expect["primes"]
    )
    if not ok:
        sys.exit(f"sympy disagrees on {text}: order {order}, oracle {expect}")
    return True


def main():
    galnil = sys.argv[1] if len(sys.argv) > 1 else str(ROOT / "target/release/galnil")
    lines = []
    checked = 0
    for name, text in NAMED + random_polys():
        res = subprocess.run(
            [galnil, "--expect-from-oracle", "--poly", text],
            capture_output=True, text=True, check=True,
        )
        entry = json.loads(res.stdout)
        entry = {"name": name, "poly": text, "expect": entry["expect"]}
        if sympy_check(text, entry["expect"]):
            checked += 1
        lines.append(json.dumps(entry))
    out = ROOT / "data/corpus.jsonl"
    out.write_text("\n".join(lines) + "\n")
    print(f"wrote {len(lines)} entries to {out}; {checked} cross-checked with sympy")


if __name__ == "__main__":
    main()
