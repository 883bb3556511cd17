#!/usr/bin/env python3
"""Generate curated group-action fixtures (JSON) used by tests and the CLI.

Writes into src/latcert/fixtures/:
  action_trivial.json      identity on the Leech lattice
  action_minus_id.json     -identity on the Leech lattice
  action_inv_8_8.json      the 1^8 2^8 involution from the M24 fixture
  action_tri_6_6.json      the 1^6 3^6 order-3 element from the M24 fixture
  a3_in_mukai.json         an A3 sublattice of the Mukai lattice (star input)
  mukai.json, leech.json   catalog lattices for CLI piping
"""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from latcert import exact
from latcert.actions import GroupAction, action_to_obj
from latcert.pipelines import build_unimodular_model
from latcert.actions import coinvariant_lattice
from latcert.catalog import make, m24_element, perm_isometry_on_leech
from latcert.lattice import Lattice, lattice_to_obj, rational_sublattice

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "latcert", "fixtures")


def write(name, obj):
    path = os.path.join(OUT, name)
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")
    print("wrote", path)


def u_block_indices(gram):
    """Indices of hyperbolic-plane pairs (i, j) with gram[i][j] = 1 and
    zero diagonal, greedily matched."""
    n = len(gram)
    used = set()
    pairs = []
    for i in range(n):
        if i in used or gram[i][i] != 0:
            continue
        for j in range(i + 1, n):
            if j not in used and gram[j][j] == 0 and gram[i][j] == 1:
                pairs.append((i, j))
                used.update((i, j))
                break
    return pairs


def main():
    leech = make("Leech")
    write("leech.json", lattice_to_obj(leech))
    mukai = make("Mukai")
    write("mukai.json", lattice_to_obj(mukai))

    ident = exact.identity(24)
    write("action_trivial.json", action_to_obj(GroupAction(lattice=leech, generators=[ident])))
    write(
        "action_minus_id.json",
        action_to_obj(GroupAction(lattice=leech, generators=[exact.mat_neg(ident)])),
    )
    for name in ("inv_8_8", "tri_6_6"):
        g = perm_isometry_on_leech(m24_element(name))
        write(f"action_{name}.json", action_to_obj(GroupAction(lattice=leech, generators=[g])))

    # A3 inside the Mukai lattice, spanned across three hyperbolic planes
    gram = mukai.gram_rows()
    pairs = u_block_indices(gram)
    assert len(pairs) >= 3, "expected at least three hyperbolic planes"
    (e1, f1), (e2, f2), (e3, f3) = pairs[:3]

    def vec(*idx):
        v = [0] * 24
        for i in idx:
            v[i] += 1
        return v

    rows = [vec(e1, f1), vec(e1, e2, f2), vec(f2, e3, f3)]
    a3 = rational_sublattice(mukai, rows)
    assert a3.gram_rows() == [[2, 1, 0], [1, 2, 1], [0, 1, 2]], a3.gram_rows()
    write("a3_in_mukai.json", lattice_to_obj(a3))

    # glued unimodular models: extended action, positive 4-space, coinvariant
    for name in ("trivial", "inv_8_8", "tri_6_6"):
        if name == "trivial":
            gens = [ident]
        else:
            gens = [perm_isometry_on_leech(m24_element(name))]
        action = GroupAction(lattice=leech, generators=gens)
        ext, pi, _model = build_unimodular_model(action)
        ng = coinvariant_lattice(ext)
        obj = {
            "action": action_to_obj(ext),
            "pi": [[str(x) for x in row] for row in pi.spanning_rows()],
        }
        write(f"glued_{name}.json", obj)
        write(f"ng_{name}.json", lattice_to_obj(ng))


if __name__ == "__main__":
    main()
