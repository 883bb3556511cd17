"""Integral lattices: Gram data, sublattices, saturation, complements, duality.

A Lattice is a symmetric integer Gram matrix on a basis, optionally embedded
in an ambient lattice through a rational basis matrix (rows = basis vectors
in ambient coordinates).  Vectors are rows; isometries act on the right.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exact
from .errors import Degenerate, DegenerateInput, DependentSpan, ZeroVector


def _freeze(M):
    return tuple(tuple(row) for row in M)


@dataclass(frozen=True)
class Lattice:
    gram: tuple
    basis: Optional[tuple] = None
    ambient: Optional["Lattice"] = None
    name: Optional[str] = None

    def __post_init__(self):
        g = _freeze(self.gram)
        object.__setattr__(self, "gram", g)
        assert exact.is_symmetric([list(r) for r in g]), "Gram must be symmetric"
        if self.basis is not None:
            b = _freeze([[Fraction(x) for x in row] for row in self.basis])
            object.__setattr__(self, "basis", b)
            assert self.ambient is not None, "basis requires an ambient lattice"
            induced = exact.mat_mul(
                exact.mat_mul(self.basis_rows(), self.ambient.gram_rows()),
                exact.transpose(self.basis_rows()),
            )
            assert [[Fraction(x) for x in row] for row in self.gram_rows()] == induced, (
                "Gram does not match the induced form"
            )

    # -- plain-list views -------------------------------------------------

    def gram_rows(self):
        return [list(row) for row in self.gram]

    def basis_rows(self):
        assert self.basis is not None
        return [list(row) for row in self.basis]

    # -- basic invariants --------------------------------------------------

    @property
    def rank(self):
        return len(self.gram)

    def det(self):
        return exact.det(self.gram_rows())

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def is_nondegenerate(self):
        return self.rank == 0 or self.det() != 0

    def signature(self):
        """(pos, neg, zero) Sylvester signature."""
        return exact.signature_of_gram(self.gram_rows())

    def is_positive_definite(self):
        p, n, z = self.signature()
        return n == 0 and z == 0

    def is_negative_definite(self):
        p, n, z = self.signature()
        return p == 0 and z == 0

    def norm(self, v):
        return exact.dot(list(v), list(v), self.gram_rows())

    def inner(self, u, v):
        return exact.dot(list(u), list(v), self.gram_rows())

    def to_ambient(self, v):
        """Coordinates of v (given in this lattice's basis) in the ambient."""
        assert self.basis is not None
        return exact.row_mat_mul([Fraction(x) for x in v], self.basis_rows())

    def rescale(self, n):
        assert n != 0
        return Lattice(gram=[[n * x for x in row] for row in self.gram_rows()])


def signature(L):
    return L.signature()


def direct_sum(A, B):
    n, m = A.rank, B.rank
    g = exact.zeros(n + m, n + m)
    for i in range(n):
        for j in range(n):
            g[i][j] = A.gram[i][j]
    for i in range(m):
        for j in range(m):
            g[n + i][n + j] = B.gram[i][j]
    return Lattice(gram=g)


def rescale(L, n):
    return L.rescale(n)


def dual_basis(L):
    """Rows = dual basis vectors in L-coordinates (the inverse Gram)."""
    if not L.is_nondegenerate():
        raise Degenerate("dual basis of a degenerate lattice")
    return exact.rat_inverse(L.gram_rows())


def sublattice(amb, vecs, name=None):
    """Sublattice of amb spanned by integer rows vecs, with HNF basis."""
    H, _ = exact.hnf([list(v) for v in vecs]) if vecs else ([], None)
    rows = [row for row in H if any(x != 0 for x in row)]
    G = amb.gram_rows()
    gram = exact.mat_mul(exact.mat_mul(rows, G), exact.transpose(rows)) if rows else []
    return Lattice(gram=exact.to_ints(gram), basis=rows, ambient=amb, name=name)


def rational_sublattice(amb, rows, name=None):
    """Sublattice with a prescribed (possibly rational) basis, not HNF-reduced.

    The rows must be independent and the induced Gram integral.
    """
    rows = [[Fraction(x) for x in row] for row in rows]
    if exact.rat_rank(rows) != len(rows):
        raise DependentSpan("basis rows are dependent")
    gram = exact.mat_mul(exact.mat_mul(rows, amb.gram_rows()), exact.transpose(rows))
    return Lattice(gram=exact.to_ints(gram), basis=rows, ambient=amb, name=name)


def _clear_denominators(rows):
    out = []
    for row in rows:
        denom = 1
        for x in row:
            denom = math.lcm(denom, Fraction(x).denominator)
        out.append([int(Fraction(x) * denom) for x in row])
    return out


def saturation_of_rows(amb, rows):
    """HNF basis of (Q-span of rows) ∩ Z^n, rows in ambient coordinates."""
    ints = _clear_denominators(rows)
    ints = [r for r in ints if any(x != 0 for x in r)]
    n = amb.rank
    if not ints:
        return []
    # two-step kernel: saturation = ker(ker(rows))
    K = exact.int_kernel(exact.transpose(ints))
    if not K:
        return exact.identity(n)
    return exact.int_kernel(exact.transpose(K))


def saturation(S):
    assert S.ambient is not None, "saturation needs an ambient lattice"
    rows = saturation_of_rows(S.ambient, S.basis_rows())
    return sublattice(S.ambient, rows, name=S.name)


def intersection(S, T):
    """The intersection of two sublattices of the same ambient lattice.

    Both sublattices must have integer basis rows in ambient coordinates.
    """
    assert S.ambient is not None and S.ambient is T.ambient
    a = [[int(x) for x in row] for row in S.basis_rows()]
    b = [[int(x) for x in row] for row in T.basis_rows()]
    if not a or not b:
        return sublattice(S.ambient, [])
    stacked = a + [[-x for x in row] for row in b]
    # kernel rows (u | v) satisfy u.a = v.b, so u.a spans the intersection
    kernel = exact.int_kernel(stacked)
    rows = [exact.row_mat_mul(k[: len(a)], a) for k in kernel]
    return sublattice(S.ambient, [r for r in rows if any(r)])


def is_saturated(S):
    """True iff S equals its saturation (same rank and covolume)."""
    sat = saturation(S)
    return sat.rank == S.rank and abs(sat.det()) == abs(S.det())


def orth_complement(S):
    """Saturated {x in ambient : (x, s) = 0 for all s in S}."""
    amb = S.ambient
    assert amb is not None, "orthogonal complement needs an ambient lattice"
    if not amb.is_nondegenerate():
        raise DegenerateInput("ambient lattice is degenerate")
    if S.rank == 0:
        return sublattice(amb, exact.identity(amb.rank))
    if not S.is_nondegenerate():
        raise DegenerateInput("sublattice is degenerate")
    B = _clear_denominators(S.basis_rows())
    M = exact.mat_mul(amb.gram_rows(), exact.transpose(B))
    K = exact.int_kernel(M)
    return sublattice(amb, K)


def is_primitive_vector(v, L):
    if all(x == 0 for x in v):
        raise ZeroVector("primitivity of the zero vector")
    return math.gcd(*(int(x) for x in v)) == 1


def is_primitive_in_dual(v, L):
    if all(x == 0 for x in v):
        raise ZeroVector("primitivity of the zero vector")
    if not L.is_nondegenerate():
        raise Degenerate("dual of a degenerate lattice")
    pairings = exact.row_mat_mul(list(v), L.gram_rows())
    return math.gcd(*(int(x) for x in pairings)) == 1


def split_decompose(v, S):
    """v = v1 + v2 with v1 in S ⊗ Q and v2 in S^⊥ ⊗ Q (exact projection)."""
    amb = S.ambient
    assert amb is not None
    if not amb.is_nondegenerate() or not S.is_nondegenerate():
        raise DegenerateInput("projection needs nondegenerate lattices")
    v = [Fraction(x) for x in v]
    B = S.basis_rows()
    G = amb.gram_rows()
    # coefficients c with v1 = c @ B: c = (v G B^T) (B G B^T)^{-1}
    vGBt = exact.row_mat_mul(exact.row_mat_mul(v, G), exact.transpose(B))
    c = exact.row_mat_mul(vGBt, exact.rat_inverse(S.gram_rows()))
    v1 = exact.row_mat_mul(c, B)
    v2 = [a - b for a, b in zip(v, v1)]
    return v1, v2


@dataclass(frozen=True)
class RationalSubspace:
    ambient: Lattice
    spanning: tuple

    def __post_init__(self):
        rows = _freeze([[Fraction(x) for x in row] for row in self.spanning])
        object.__setattr__(self, "spanning", rows)
        if exact.rat_rank(self.spanning_rows()) != len(rows):
            raise DependentSpan("spanning rows are dependent")

    def spanning_rows(self):
        return [list(row) for row in self.spanning]

    @property
    def rank(self):
        return len(self.spanning)


def restricted_gram(P):
    rows = P.spanning_rows()
    return exact.mat_mul(
        exact.mat_mul(rows, P.ambient.gram_rows()), exact.transpose(rows)
    )


def is_positive_subspace(P):
    pos, neg, zero = exact.signature_of_gram(restricted_gram(P))
    return neg == 0 and zero == 0


# ---------------------------------------------------------------------------
# JSON serialization


def _frac_str(x):
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def lattice_to_obj(L):
    obj = {"gram": [[int(x) for x in row] for row in L.gram_rows()]}
    if L.name is not None:
        obj["name"] = L.name
    if L.basis is not None:
        obj["basis"] = [[_frac_str(x) for x in row] for row in L.basis_rows()]
        obj["ambient"] = lattice_to_obj(L.ambient)
    return obj


def lattice_from_obj(obj):
    gram = obj["gram"]
    name = obj.get("name")
    if "basis" in obj:
        amb = lattice_from_obj(obj["ambient"])
        basis = [[Fraction(x) for x in row] for row in obj["basis"]]
        return Lattice(gram=gram, basis=basis, ambient=amb, name=name)
    return Lattice(gram=gram, name=name)
