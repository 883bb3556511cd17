"""Exact short-vector enumeration (Fincke-Pohst) and root detection.

All interval endpoints are computed exactly from the rational LDL^T
factorization; floating point is used only as an initial guess that is then
corrected by exact integer comparisons, so the enumeration is complete.
"""

import itertools
import math
from fractions import Fraction

from gmpy2 import mpq

from . import exact
from .errors import (
    ComplementNotDefinite,
    NotNegativeDefinite,
    NotPositiveDefinite,
    ResourceCap,
)
from .lattice import orth_complement, rational_sublattice, rescale, saturation

NODE_BUDGET = 10**8


def _floor_sqrt_shifted(t, r):
    """max {m in Z : m <= t + sqrt(r)} for rationals t and r >= 0."""
    m = math.floor(float(t) + math.sqrt(float(r))) if r >= 0 else None
    assert r >= 0
    # exact fixup: m <= t + sqrt(r)  <=>  m - t <= sqrt(r)
    while not _le_sqrt(m - t, r):
        m -= 1
    while _le_sqrt(m + 1 - t, r):
        m += 1
    return m


def _ceil_sqrt_shifted(t, r):
    """min {m in Z : m >= t - sqrt(r)} for rationals t and r >= 0."""
    return -_floor_sqrt_shifted(-t, r)


def _le_sqrt(x, r):
    """Whether x <= sqrt(r), exactly (x rational, r rational >= 0)."""
    if x <= 0:
        return True
    return x * x <= r


def short_vectors(lat, bound, node_budget=NODE_BUDGET):
    """All nonzero v with (v, v) <= bound, one per sign class.

    The representative has positive first nonzero coordinate; the result is
    sorted lexicographically and each entry is (vector, norm).
    """
    if not lat.is_positive_definite():
        raise NotPositiveDefinite("short-vector enumeration needs positive definite input")
    if bound < 0:
        return []
    n = lat.rank
    l_mat, d_mat = exact.rat_ldlt(lat.gram_rows())
    # convert to gmpy2 rationals for the hot loop
    l_q = [[mpq(x.numerator, x.denominator) for x in row] for row in l_mat]
    d_q = [mpq(d_mat[i][i].numerator, d_mat[i][i].denominator) for i in range(n)]
    bound_q = mpq(bound)
    gram = lat.gram_rows()
    out = []
    x = [0] * n
    # center contributions: c[i] = sum_{j>i} l[j][i] * x[j]
    nodes = 0

    def rec(i, remaining):
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceCap("short-vector node budget exceeded")
        c = sum((l_q[j][i] * x[j] for j in range(i + 1, n)), mpq(0))
        r = remaining / d_q[i]
        lo = _ceil_sqrt_shifted(-c, r)
        hi = _floor_sqrt_shifted(-c, r)
        for xi in range(lo, hi + 1):
            x[i] = xi
            used = d_q[i] * (xi + c) ** 2
            if i == 0:
                if any(x):
                    out.append(list(x))
            else:
                rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, bound_q)
    canon = []
    for v in out:
        lead = next(a for a in v if a)
        if lead < 0:
            v = [-a for a in v]
        canon.append(v)
    # deduplicate sign classes and sort
    uniq = sorted({tuple(v) for v in canon})
    result = []
    for v in uniq:
        nv = exact.dot(list(v), list(v), gram)
        assert 0 < nv <= bound
        result.append((list(v), nv))
    return result


def roots(lat, node_budget=NODE_BUDGET):
    """All (-2)-vectors of a negative definite lattice, one per sign class."""
    if not lat.is_negative_definite():
        raise NotNegativeDefinite("root enumeration needs negative definite input")
    flipped = rescale(lat, -1)
    return [v for v, nv in short_vectors(flipped, 2, node_budget) if nv == 2]


def roots_in_complement(subspace, node_budget=NODE_BUDGET):
    """The (-2)-classes of P^perp, in ambient coordinates.

    P is a rational subspace of a nondegenerate ambient lattice; the
    saturated integral complement must be negative definite.  An empty
    result certifies that no root of the ambient is orthogonal to P.
    """
    amb = subspace.ambient
    # scale each spanning row to a primitive integer vector; the complement
    # only depends on the spanned subspace
    rows = []
    for row in subspace.spanning_rows():
        fr = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in fr))
        ints = [int(x * den) for x in fr]
        g = math.gcd(*ints)
        rows.append([x // g for x in ints] if g else ints)
    span = rational_sublattice(amb, rows)
    comp = saturation(orth_complement(span))
    if comp.rank == 0:
        return []
    if not comp.is_negative_definite():
        raise ComplementNotDefinite(
            "orthogonal complement is not negative definite; root set may be infinite"
        )
    found = roots(comp, node_budget)
    basis = [list(r) for r in comp.basis_rows()]
    return [exact.row_mat_mul(v, basis) for v in found]


BOX_NODE_BUDGET = 10**6


def box_vectors_of_norm(lat, norm, coord_bound, node_budget=BOX_NODE_BUDGET):
    """Vectors with coordinates in [-coord_bound, coord_bound] and (v,v) = norm.

    Returns (vectors, complete).  One representative per sign class (first
    nonzero coordinate positive); candidates are visited in order of
    increasing support size, so sparse solutions are found first.  When the
    node budget runs out the partial result is returned with complete =
    False -- for indefinite lattices this is a bounded search, not an
    enumeration of the lattice.
    """
    out = []
    complete = True
    for v in iter_box_vectors_of_norm(lat, norm, coord_bound, node_budget):
        if v is None:
            complete = False
            break
        out.append(v)
    out.sort()
    return out, complete


def iter_box_vectors_of_norm(lat, norm, coord_bound, node_budget=BOX_NODE_BUDGET):
    """Generator behind box_vectors_of_norm; yields None once when the node
    budget is exhausted, then stops."""
    n = lat.rank
    gram = lat.gram_rows()
    nodes = 0
    values = [a for a in range(-coord_bound, coord_bound + 1) if a]
    for size in range(1, n + 1):
        for support in itertools.combinations(range(n), size):
            for vals in itertools.product(values, repeat=size):
                if vals[0] < 0:
                    continue  # canonical sign class
                nodes += 1
                if nodes > node_budget:
                    yield None
                    return
                v = [0] * n
                for i, a in zip(support, vals):
                    v[i] = a
                if exact.dot(v, v, gram) == norm:
                    yield v
