"""Generate the bundled M24 permutation data.

Builds generators of M24 as permutations of the 24 Golay coordinates
(residues 0..22 mod 23 plus the parity position for infinity):

  * s: x -> x + 1
  * t: x -> -1/x
  * d: x -> x^3 / 9 for nonzero squares, x -> 9 x^3 otherwise

s and t generate PSL(2,23); d extends it to M24 (all three are checked to
preserve the Golay code).  The script then searches short words in the
generators for elements of cycle type 1^8 2^8 and 1^6 3^6, which are stored
alongside the generators for use as curated lattice actions.

Run from the repository root:  python3 scripts/gen_m24_fixtures.py
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from latcert.catalog import is_code_automorphism  # noqa: E402

P = 23
INF = 23  # index of the point at infinity


def from_map(f):
    """Permutation of 0..23 from a map on P^1(F_23) given as f(x) with x=INF allowed."""
    img = [f(x) for x in range(24)]
    assert sorted(img) == list(range(24)), img
    return tuple(img)


def inv_mod(a):
    return pow(a, P - 2, P)


def s_map(x):
    return INF if x == INF else (x + 1) % P


def t_map(x):
    # x -> -1/x
    if x == INF:
        return 0
    if x == 0:
        return INF
    return (-inv_mod(x)) % P


_SQUARES = {pow(i, 2, P) for i in range(1, P)}


def d_map(x):
    # x -> x^3/9 on nonzero squares, x -> 9x^3 otherwise; fixes 0 and infinity
    if x == INF:
        return INF
    if x == 0:
        return 0
    c = pow(x, 3, P)
    if x in _SQUARES:
        return (c * inv_mod(9)) % P
    return (9 * c) % P


def compose(p, q):
    """(p then q) as image arrays."""
    return tuple(q[p[i]] for i in range(24))


def cycle_type(p):
    seen = [False] * 24
    lens = []
    for i in range(24):
        if seen[i]:
            continue
        j, n = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lens.append(n)
    return tuple(sorted(lens))


def find_with_cycle_type(gens, target, cap=2_000_000):
    """Breadth-first search of the generated group for a given cycle type."""
    idgen = tuple(range(24))
    seen = {idgen}
    frontier = [idgen]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = compose(p, g)
                if q in seen:
                    continue
                if cycle_type(q) == target:
                    return q
                seen.add(q)
                new.append(q)
                if len(seen) > cap:
                    raise RuntimeError("cap exceeded")
        frontier = new
    raise RuntimeError(f"cycle type {target} not found")


def main():
    s = from_map(s_map)
    t = from_map(t_map)
    d = from_map(d_map)
    for name, g in [("s", s), ("t", t), ("d", d)]:
        ok = is_code_automorphism(g)
        print(f"generator {name}: preserves code = {ok}")
        if not ok:
            raise SystemExit(f"generator {name} does not preserve the code")

    gens = [s, t, d]
    print("searching for cycle type 1^8 2^8 ...")
    inv_8_8 = find_with_cycle_type(gens, tuple([1] * 8 + [2] * 8))
    print("  found:", inv_8_8)
    print("searching for cycle type 1^6 3^6 ...")
    tri_6_6 = find_with_cycle_type(gens, tuple([1] * 6 + [3] * 6))
    print("  found:", tri_6_6)
    for name, g in [("inv_8_8", inv_8_8), ("tri_6_6", tri_6_6)]:
        assert is_code_automorphism(g), name

    out = {
        "comment": "Permutations of the 24 Golay coordinates (0..22 = F_23, 23 = infinity).",
        "generators": [
            {"name": "s", "image": list(s)},
            {"name": "t", "image": list(t)},
            {"name": "d", "image": list(d)},
        ],
        "elements": [
            {"name": "inv_8_8", "cycle_type": "1^8 2^8", "image": list(inv_8_8)},
            {"name": "tri_6_6", "cycle_type": "1^6 3^6", "image": list(tri_6_6)},
        ],
    }
    dest = pathlib.Path(__file__).resolve().parents[1] / "src/latcert/fixtures/m24_generators.json"
    dest.write_text(json.dumps(out, indent=2) + "\n")
    print("wrote", dest)


if __name__ == "__main__":
    main()
