"""Overlattice gluing: build even unimodular models from definite pieces.

Given a negative definite lattice C (here: the orthogonal complement of a
rank-4 sublattice of the Leech lattice) this module finds a positive
definite rank-4 partner T with anti-isometric discriminant form and glues
C + T along the graph of the anti-isometry into an even unimodular lattice
of signature (4, rank C - 16 + 20) = (4, rk C).  All outputs are verified
by invariants (even, |det| = 1, signature), never by assumption.
"""

import math
from fractions import Fraction

from . import exact
from .catalog import make
from .discforms import disc_form, disc_generators_dual, find_isomorphism, negate
from .embeddings import search_embedding
from .errors import NotFoundWithinBounds
from .lattice import (
    Lattice,
    direct_sum,
    orth_complement,
    rational_sublattice,
    rescale,
    saturation,
    sublattice,
)
from .shortvec import box_vectors_of_norm, iter_box_vectors_of_norm

# ---------------------------------------------------------------------------
# choosing a rank-4 sublattice of the invariant part


def choose_rank4_sublattice(inv, norm_bound=8, coord_bound=2, pool_size=200):
    """A primitive rank-4 sublattice of a negative definite lattice.

    Candidates are gathered by a bounded sparse-first box search in the
    basis of the lattice (plus the basis rows themselves); four of them are
    chosen greedily to minimize |det|.  Returns the saturated sublattice,
    with basis rows in the coordinates of inv's ambient.
    """
    assert inv.rank >= 4 and inv.is_negative_definite()
    pos = rescale(Lattice(gram=inv.gram_rows()), -1)
    cands = []
    seen = set()
    for nm in range(2, norm_bound + 1, 2):
        vs, _ = box_vectors_of_norm(pos, nm, coord_bound, node_budget=10**5)
        for v in vs:
            if tuple(v) not in seen:
                seen.add(tuple(v))
                cands.append(v)
        if len(cands) >= pool_size:
            break
    for row in exact.identity(inv.rank):
        if tuple(row) not in seen:
            cands.append(row)
    cands = cands[:pool_size]
    g = inv.gram_rows()
    chosen = []

    def det_of(rows):
        gram = exact.mat_mul(exact.mat_mul(rows, g), exact.transpose(rows))
        return abs(exact.det(gram))

    for _ in range(4):
        best = None
        for v in cands:
            rows = chosen + [v]
            if exact.rat_rank(exact.to_fractions(rows)) != len(rows):
                continue
            d = det_of(rows)
            if d == 0:
                continue
            if best is None or d < best[0]:
                best = (d, v)
        if best is None:
            raise NotFoundWithinBounds("no rank-4 sublattice found within bounds")
        chosen.append(best[1])
    amb = inv.ambient
    in_amb = exact.to_ints(exact.mat_mul(exact.to_fractions(chosen), exact.to_fractions(inv.basis_rows())))
    sat = saturation(sublattice(amb, in_amb))
    reduced = _reduce_basis(exact.to_ints(sat.basis_rows()), amb.gram_rows())
    return rational_sublattice(amb, reduced)


def _reduce_basis(rows, gram):
    """Greedy pairwise norm reduction of a definite basis (Lagrange style)."""

    def nrm(v):
        return abs(exact.dot(v, v, gram))

    rows = [list(r) for r in rows]
    changed = True
    while changed:
        changed = False
        for i in range(len(rows)):
            for j in range(len(rows)):
                if i == j:
                    continue
                num = exact.dot(rows[i], rows[j], gram)
                den = exact.dot(rows[j], rows[j], gram)
                if den == 0:
                    continue
                r = Fraction(num, den)
                q = (2 * r.numerator + r.denominator) // (2 * r.denominator)
                if q:
                    cand = [a - q * b for a, b in zip(rows[i], rows[j])]
                    if nrm(cand) < nrm(rows[i]):
                        rows[i] = cand
                        changed = True
    rows.sort(key=nrm)
    return rows


# ---------------------------------------------------------------------------
# finding the positive definite glue partner


def _scaled_block(name, k):
    grams = {
        "A1": [[2]],
        "A2": [[2, 1], [1, 2]],
        "A3": [[2, 1, 0], [1, 2, 1], [0, 1, 2]],
        "D4": [[2, 0, 1, 0], [0, 2, 1, 0], [1, 1, 2, 1], [0, 0, 1, 2]],
    }
    return exact.mat_scale(grams[name], k)


_BLOCK_SHAPES = [("A1", 1), ("A2", 2), ("A3", 3), ("D4", 4)]


def _rank4_block_candidates(det_target, max_scale=12):
    """Even positive definite rank-4 direct sums of scaled root blocks."""
    pieces = []
    for name, rk in _BLOCK_SHAPES:
        for k in range(1, max_scale + 1):
            g = _scaled_block(name, k)
            pieces.append((rk, abs(exact.det(g)), g))
    out = []

    def rec(rank_left, det_left, start, acc):
        if rank_left == 0:
            if det_left == 1:
                lat = acc[0]
                for g in acc[1:]:
                    lat = direct_sum(lat, g)
                out.append(lat)
            return
        for idx in range(start, len(pieces)):
            rk, d, g = pieces[idx]
            if rk > rank_left or det_left % d:
                continue
            rec(rank_left - rk, det_left // d, idx, acc + [Lattice(gram=g)])

    rec(4, det_target, 0, [])
    return out


def find_glue_partner(c_lat, s4=None, iso_cap=4096):
    """A rank-4 positive definite even lattice T with q_T = -q_C, plus the
    anti-isometry witness.

    First tries the complement of S4(-1) inside E8 (whose discriminant form
    is -q_{S4(-1)} = -q_C by unimodularity); falls back to a pool of scaled
    root-block direct sums matched by brute-force form isomorphism.
    Returns (T, images) where images[i] lists the coefficients of the image
    of the i-th discriminant generator of T over the generators of A_C.
    """
    target = negate(disc_form(c_lat))
    det_target = abs(c_lat.det())
    candidates = []
    if s4 is not None and max(abs(s4.gram_rows()[i][i]) for i in range(4)) <= 8:
        e8 = make("E8")
        s4_pos = Lattice(gram=exact.mat_neg(s4.gram_rows()))
        witness = search_embedding(s4_pos, e8)
        if witness is not None and witness.primitive:
            image = sublattice(e8, witness.map_rows())
            comp = orth_complement(image)
            candidates.append(Lattice(gram=comp.gram_rows()))
    candidates.extend(_rank4_block_candidates(det_target))
    for cand in candidates:
        if abs(cand.det()) != det_target:
            continue
        images = find_isomorphism(disc_form(cand), target, cap=iso_cap)
        if images is not None:
            return cand, images
    raise NotFoundWithinBounds("no glue partner found in the candidate pool")


# ---------------------------------------------------------------------------
# the glued overlattice


def glue_unimodular(c_lat, t_lat, images):
    """The even unimodular overlattice of C + T glued along an anti-isometry.

    images: for each discriminant generator of T, its image coefficients
    over the discriminant generators of C (a q-anti-isometry).  Returns
    (glued Lattice, basis) where basis rows express the glued basis in the
    block coordinates of C + T.
    """
    block = direct_sum(Lattice(gram=c_lat.gram_rows()), Lattice(gram=t_lat.gram_rows()))
    nc, nt = c_lat.rank, t_lat.rank
    dual_c = disc_generators_dual(Lattice(gram=c_lat.gram_rows()))
    dual_t = disc_generators_dual(Lattice(gram=t_lat.gram_rows()))
    rows = [[Fraction(x) for x in row] for row in exact.identity(nc + nt)]
    for i, img in enumerate(images):
        c_part = [Fraction(0)] * nc
        for j, coeff in enumerate(img):
            c_part = [a + coeff * b for a, b in zip(c_part, dual_c[j])]
        rows.append(list(c_part) + list(dual_t[i]))
    den = math.lcm(*(x.denominator for row in rows for x in row))
    ints = [[int(x * den) for x in row] for row in rows]
    h, _ = exact.hnf(ints)
    basis = [[Fraction(x, den) for x in row] for row in h if any(row)]
    gram = exact.mat_mul(
        exact.mat_mul(basis, exact.to_fractions(block.gram_rows())), exact.transpose(basis)
    )
    assert exact.is_integral(gram), "glue vectors do not pair integrally"
    gram = exact.to_ints(gram)
    glued = Lattice(gram=gram)
    assert glued.is_even(), "glued lattice is not even"
    assert abs(glued.det()) == 1, "glued lattice is not unimodular"
    return glued, basis


def block_to_glued(vec, basis):
    """Coordinates of a block-coordinate vector in the glued basis."""
    binv = exact.rat_inverse(exact.to_fractions(basis))
    return exact.row_mat_mul([Fraction(x) for x in vec], binv)


def glued_coordinate_matrix(rows, basis):
    """Glued-basis coordinates of many block-coordinate rows."""
    binv = exact.rat_inverse(exact.to_fractions(basis))
    return exact.mat_mul(exact.to_fractions(rows), binv)


# ---------------------------------------------------------------------------
# hyperbolic splits of unimodular lattices


def find_u0_split(lat, coord_bound=2):
    """A distinguished U summand of an even unimodular lattice.

    Returns (w, z) with (w,w) = (z,z) = 0 and (w,z) = 1; raises
    NotFoundWithinBounds when no primitive isotropic vector lies in the
    search box.
    """
    g = lat.gram_rows()
    for w in iter_box_vectors_of_norm(lat, 0, coord_bound):
        if w is None:
            break
        pair = exact.row_mat_mul(w, g)
        if math.gcd(*(int(x) for x in pair)) != 1:
            continue
        # solve (w, z) = 1 by HNF on the pairing column
        ht, ut = exact.hnf([[x] for x in pair])
        assert abs(ht[0][0]) == 1
        z = [x * ht[0][0] for x in ut[0]]
        zz = exact.dot(z, z, g)
        k = zz // 2
        z = [a - k * b for a, b in zip(z, w)]
        assert exact.dot(z, z, g) == 0 and exact.dot(w, z, g) == 1
        return w, z
    raise NotFoundWithinBounds("no primitive isotropic vector within the box")
