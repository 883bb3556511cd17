"""Constructions of the named lattices, the binary Golay code, and M24 data.

All catalog lattices are built exactly over Z.  The Leech lattice and the
A1^24 Niemeier lattice are constructed from the extended binary Golay code
and stored negative definite; their defining invariants (even, unimodular,
root count) are asserted at construction time.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib.resources import files

from . import exact
from .errors import NotCodeAutomorphism, UnknownName
from .lattice import (
    Lattice,
    direct_sum,
    orth_complement,
    rational_sublattice,
    saturation,
    sublattice,
)

# ---------------------------------------------------------------------------
# binary Golay code


@dataclass(frozen=True)
class BinaryCode:
    """A binary linear code; generator rows are 0/1 tuples."""

    length: int
    dimension: int
    generator: tuple

    def words(self):
        """All codewords as bitmasks (bit i = coordinate i)."""
        masks = [sum(b << i for i, b in enumerate(row)) for row in self.generator]
        out = [0]
        for m in masks:
            out += [w ^ m for w in out]
        return out

    def contains(self, word):
        """Membership for a word given as a 0/1 sequence or a bitmask."""
        if not isinstance(word, int):
            word = sum((b & 1) << i for i, b in enumerate(word))
        return word in _word_set(self)


@lru_cache(maxsize=None)
def _word_set(code):
    return frozenset(code.words())


# generator polynomial of the length-23 quadratic-residue code:
# x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
_QR_POLY_DEGREES = (0, 2, 4, 5, 6, 10, 11)


@lru_cache(maxsize=None)
def golay():
    """The extended binary Golay code [24,12,8].

    Coordinates 0..22 index the residues mod 23 (cyclic quadratic-residue
    code); coordinate 23 is the overall parity position.
    """
    rows = []
    for shift in range(12):
        row = [0] * 24
        for d in _QR_POLY_DEGREES:
            row[(d + shift) % 23] = 1
        row[23] = sum(row) % 2
        rows.append(tuple(row))
    return BinaryCode(length=24, dimension=12, generator=tuple(rows))


def golay_hex_rows():
    """Generator matrix as 12 six-digit hex strings (bit i of row = coord i)."""
    out = []
    for row in golay().generator:
        mask = sum(b << i for i, b in enumerate(row))
        out.append(format(mask, "06x"))
    return out


# ---------------------------------------------------------------------------
# named lattices

_U_GRAM = [[0, 1], [1, 0]]

# Cartan matrix of E8 (Bourbaki numbering: chain 1-3-4-5-6-7-8, node 2 on 4)
_E8_GRAM = [
    [2, 0, -1, 0, 0, 0, 0, 0],
    [0, 2, 0, -1, 0, 0, 0, 0],
    [-1, 0, 2, -1, 0, 0, 0, 0],
    [0, -1, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, -1],
    [0, 0, 0, 0, 0, 0, -1, 2],
]


def _leech_frame_basis():
    """HNF basis of the Leech lattice in its scaled integer frame Z^24.

    The frame is Z^24 with the standard form scaled by 1/8; generators are
    (-3, 1^23), twice the Golay basis codewords, and 4e_0 + 4e_j.
    """
    rows = [[-3] + [1] * 23]
    for c in golay().generator:
        rows.append([2 * b for b in c])
    for j in range(1, 24):
        row = [0] * 24
        row[0] = 4
        row[j] = 4
        rows.append(row)
    h, _ = exact.hnf(rows)
    return [r for r in h if any(r)]


def _niemeier_a1_frame_basis():
    """HNF basis of {x in Z^24 : x mod 2 in Golay} (form scaled by 1/2)."""
    rows = [list(c) for c in golay().generator]
    for j in range(24):
        row = [0] * 24
        row[j] = 2
        rows.append(row)
    h, _ = exact.hnf(rows)
    return [r for r in h if any(r)]


def _scaled_neg_gram(basis, scale):
    bt = exact.transpose(basis)
    prod = exact.mat_mul(basis, bt)
    gram = []
    for row in prod:
        new = []
        for x in row:
            q, r = divmod(-x, scale)
            assert r == 0, "frame Gram not divisible by scale"
            new.append(q)
        gram.append(new)
    return gram


def _mukai_gram():
    """Gram in coordinates (r; 22 K3 coordinates; s), pairing -rs' - r's + c.c'."""
    k3 = make("K3").gram_rows()
    n = 24
    g = [[0] * n for _ in range(n)]
    for i in range(22):
        for j in range(22):
            g[1 + i][1 + j] = k3[i][j]
    g[0][23] = g[23][0] = -1
    return g


@lru_cache(maxsize=None)
def make(name):
    """Construct a catalog lattice by name."""
    if name == "U":
        return Lattice(gram=_U_GRAM, name="U")
    if name == "A1":
        return Lattice(gram=[[2]], name="A1")
    if name == "A1neg":
        return Lattice(gram=[[-2]], name="A1neg")
    if name == "E8":
        return Lattice(gram=_E8_GRAM, name="E8")
    if name == "E8neg":
        return Lattice(gram=exact.mat_neg(_E8_GRAM), name="E8neg")
    if name == "K3":
        e8n, u = make("E8neg"), make("U")
        lat = direct_sum(direct_sum(e8n, e8n), direct_sum(u, direct_sum(u, u)))
        return Lattice(gram=lat.gram_rows(), name="K3")
    if name == "Mukai":
        lat = Lattice(gram=_mukai_gram(), name="Mukai")
        assert lat.is_even() and lat.det() == 1
        assert lat.signature() == (4, 20, 0)
        return lat
    if name == "Leech":
        basis = _leech_frame_basis()
        lat = Lattice(gram=_scaled_neg_gram(basis, 8), name="Leech")
        assert lat.is_even() and abs(lat.det()) == 1
        return lat
    if name == "NiemeierA1":
        basis = _niemeier_a1_frame_basis()
        lat = Lattice(gram=_scaled_neg_gram(basis, 2), name="NiemeierA1")
        assert lat.is_even() and abs(lat.det()) == 1
        return lat
    if name == "Gamma":
        lat = direct_sum(make("Leech"), make("U"))
        return Lattice(gram=lat.gram_rows(), name="Gamma")
    raise UnknownName(f"no catalog lattice named {name!r}")


CATALOG_NAMES = (
    "U",
    "A1",
    "A1neg",
    "E8",
    "E8neg",
    "K3",
    "Mukai",
    "Gamma",
    "Leech",
    "NiemeierA1",
)


# ---------------------------------------------------------------------------
# M24 generators (permutations on the 24 Golay coordinates)


def _apply_perm_to_word(perm, row):
    out = [0] * 24
    for i, b in enumerate(row):
        out[perm[i]] = b
    return out


def is_code_automorphism(perm):
    """True iff the coordinate permutation maps the Golay code to itself."""
    code = golay()
    return all(code.contains(_apply_perm_to_word(perm, row)) for row in code.generator)


@lru_cache(maxsize=None)
def m24_generators():
    """Generating permutations of M24, loaded from bundled data.

    Each permutation is validated at load time to preserve the Golay code.
    """
    text = files("latcert.fixtures").joinpath("m24_generators.json").read_text()
    data = json.loads(text)
    gens = []
    for entry in data["generators"]:
        perm = tuple(entry["image"])
        assert sorted(perm) == list(range(24)), "fixture permutation not bijective"
        if not is_code_automorphism(perm):
            raise NotCodeAutomorphism(f"fixture generator {entry['name']} fails")
        gens.append(perm)
    return tuple(gens)


@lru_cache(maxsize=None)
def m24_element(name):
    """A named M24 element from the bundled data (e.g. cycle type 1^8 2^8).

    Validated at load: the permutation preserves the Golay code and has the
    declared cycle type.
    """
    text = files("latcert.fixtures").joinpath("m24_generators.json").read_text()
    data = json.loads(text)
    for entry in data["elements"]:
        if entry["name"] != name:
            continue
        perm = tuple(entry["image"])
        assert sorted(perm) == list(range(24)), "fixture permutation not bijective"
        if not is_code_automorphism(perm):
            raise NotCodeAutomorphism(f"fixture element {name} fails")
        assert _cycle_type_str(perm) == entry["cycle_type"]
        return perm
    raise UnknownName(f"no bundled M24 element named {name!r}")


def _cycle_type_str(perm):
    seen = [False] * 24
    lens = []
    for i in range(24):
        if seen[i]:
            continue
        j, n = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        lens.append(n)
    counts = {}
    for n in lens:
        counts[n] = counts.get(n, 0) + 1
    return " ".join(f"{n}^{c}" for n, c in sorted(counts.items()))


def perm_isometry_on_leech(perm):
    """The matrix of a Golay-preserving coordinate permutation on Leech.

    Returns the integer matrix X with (row convention) v |-> v.X on the
    stored Leech basis; raises NotCodeAutomorphism if the result is not an
    isometry of the Leech Gram.
    """
    basis = _leech_frame_basis()
    p_mat = [[0] * 24 for _ in range(24)]
    for i in range(24):
        p_mat[i][perm[i]] = 1
    b_inv = exact.rat_inverse(exact.to_fractions(basis))
    x = exact.mat_mul(exact.mat_mul(exact.to_fractions(basis), p_mat), b_inv)
    if not exact.is_integral(x):
        raise NotCodeAutomorphism("permutation does not preserve the Leech lattice")
    x = exact.to_ints(x)
    g = make("Leech").gram_rows()
    if exact.mat_mul(exact.mat_mul(x, g), exact.transpose(x)) != g:
        raise NotCodeAutomorphism("permutation does not preserve the Leech Gram")
    return x


# ---------------------------------------------------------------------------
# Gamma = Leech + U: Weyl vector and quotient


def weyl_vector():
    """The distinguished primitive isotropic vector w = e in Gamma = N + U."""
    w = [0] * 26
    w[24] = 1
    return w


def is_leech_root(d):
    """True iff d in Gamma has norm -2 and pairs to 1 with the Weyl vector."""
    gam = make("Gamma")
    return gam.norm(d) == -2 and gam.inner(d, weyl_vector()) == 1


def gamma_mod_w():
    """The quotient w^perp / Z*w of Gamma, as a rank-24 lattice.

    The restricted form on w^perp has radical Z*w, so it descends to the
    quotient; the result is even with |det| = 1.
    """
    gam = make("Gamma")
    w = weyl_vector()
    # w is isotropic, so compute w^perp directly as an integer kernel
    gw = exact.mat_mul(gam.gram_rows(), exact.transpose([list(w)]))
    b = exact.int_kernel(gw)
    # coefficient vector of w in the w^perp basis (b is in HNF: solve on pivots)
    coeffs = _solve_in_hnf_rows(b, list(w))
    # complete w to a basis of w^perp; the remaining rows span the quotient,
    # and their Gram is the quotient Gram since w lies in the radical
    k = next((i for i, c in enumerate(coeffs) if abs(c) == 1), None)
    if k is not None:
        rest = [row for i, row in enumerate(b) if i != k]
    else:
        comp = _complete_primitive_row(coeffs)
        rest = exact.mat_mul(comp, b)[1:]
    quo = rational_sublattice(gam, rest)
    g = quo.gram_rows()
    lat = Lattice(gram=g, name="GammaModW")
    assert lat.is_even() and abs(lat.det()) == 1
    return lat


def _solve_in_hnf_rows(rows, target):
    """Integer coefficients c with c . rows = target, for rows in HNF."""
    rem = list(target)
    coeffs = []
    for row in rows:
        piv = next(j for j, x in enumerate(row) if x)
        q, r = divmod(rem[piv], row[piv])
        assert r == 0
        coeffs.append(q)
        rem = [a - q * b for a, b in zip(rem, row)]
    assert not any(rem), "target not in the row span"
    return coeffs


def _complete_primitive_row(row):
    """A unimodular integer matrix whose first row is the given primitive row."""
    ht, ut = exact.hnf([[x] for x in row])
    assert ht[0][0] == 1 and all(r[0] == 0 for r in ht[1:])
    # ut * row^T = e_1^T, so the first column of ut^-1 is `row`
    v = exact.to_ints(exact.rat_inverse(exact.to_fractions(ut)))
    vt = exact.transpose(v)
    assert vt[0] == list(row)
    return vt


# ---------------------------------------------------------------------------
# Mukai-lattice operators


def _k3_inner(u, v):
    return exact.dot(list(u), list(v), make("K3").gram_rows())


def exp_b(beta):
    """The isometry exp(beta) of the Mukai lattice, for integral beta in K3.

    In coordinates (r, c, s): (r, c, s) -> (r, c + r*beta, s + (beta.c)
    + r*(beta.beta)/2).  Returns the 24x24 integer matrix acting on rows.
    """
    beta = [int(x) for x in beta]
    assert len(beta) == 22
    bb = _k3_inner(beta, beta)
    assert bb % 2 == 0
    k3 = make("K3").gram_rows()
    rows = []
    # image of the r basis vector
    rows.append([1] + beta + [bb // 2])
    # images of the K3 basis vectors e_i: (0, e_i, (beta . e_i))
    for i in range(22):
        c = [0] * 22
        c[i] = 1
        rows.append([0] + c + [exact.dot(beta, c, k3)])
    # image of the s basis vector
    rows.append([0] * 23 + [1])
    g = make("Mukai").gram_rows()
    assert exact.mat_mul(exact.mat_mul(rows, g), exact.transpose(rows)) == g
    return rows


def period_vector(b_field, alpha):
    """Real and imaginary parts of exp(B + i*alpha) in Mukai coordinates.

    Re = (1, B, ((B.B) - (alpha.alpha))/2), Im = (0, alpha, (B.alpha)).
    """
    b_field = [Fraction(x) for x in b_field]
    alpha = [Fraction(x) for x in alpha]
    assert len(b_field) == 22 and len(alpha) == 22
    re = [Fraction(1)] + b_field + [
        Fraction(_k3_inner(b_field, b_field) - _k3_inner(alpha, alpha), 2)
    ]
    im = [Fraction(0)] + alpha + [Fraction(_k3_inner(b_field, alpha))]
    return re, im
