"""Embedding criteria for even lattices and a constructive embedding search.

Criteria return three-valued verdicts: a sufficient criterion can guarantee
or refute an embedding, and stays silent (unknown) otherwise.  The
backtracking search is exact and, when it terminates below its node cap,
its None answer is a proof of non-embeddability.
"""

from dataclasses import dataclass

from . import exact
from .discforms import disc_form, ell, ell_p, negate, splits_off_a1
from .errors import ResourceCap, TooLarge
from .lattice import saturation_of_rows
from .shortvec import short_vectors

SEARCH_NODE_CAP = 10**7


@dataclass(frozen=True)
class Verdict:
    status: str  # "guaranteed" | "refuted" | "unknown"
    reasons: tuple = ()

    def __post_init__(self):
        assert self.status in ("guaranteed", "refuted", "unknown")
        if self.status != "unknown":
            assert self.reasons, "decided verdicts must cite a criterion"
        object.__setattr__(self, "reasons", tuple(self.reasons))


@dataclass(frozen=True)
class EmbeddingWitness:
    map: tuple  # rows = images of source basis in target coordinates
    primitive: bool

    def __post_init__(self):
        object.__setattr__(
            self, "map", tuple(tuple(int(x) for x in row) for row in self.map)
        )

    def map_rows(self):
        return [list(r) for r in self.map]


def exists_even_unimodular(sig):
    """Whether an even unimodular lattice of signature (p, n) exists."""
    p, n = sig
    return p >= 0 and n >= 0 and (p - n) % 8 == 0


def nikulin_existence(lat, target_sig):
    """Criterion for a primitive embedding into the even unimodular (p, n).

    Guaranteed when the signature fits and ell(A_L) < (p+n) - rk(L); in the
    equality case for (p, n) = (0, 24) the refinement applies: every odd
    Sylow part must satisfy the strict inequality and the 2-part must split
    off the A1(-1) form.  Refuted on signature or length overflow.
    """
    p, n = target_sig
    assert exists_even_unimodular(target_sig), "target must be even unimodular"
    form = disc_form(lat)  # raises OddLattice / Degenerate when violated
    lp, ln, lz = lat.signature()
    assert lz == 0
    rk = lat.rank
    corank = (p + n) - rk
    length = ell(form)
    if lp > p or ln > n:
        return Verdict(
            status="refuted",
            reasons=(("signature-overflow", f"signature ({lp},{ln}) does not fit in ({p},{n})", (lp, ln, p, n)),),
        )
    if length > corank:
        return Verdict(
            status="refuted",
            reasons=(("length-overflow", f"ell(A_L) = {length} > {corank} = rk(target) - rk(L)", (length, corank)),),
        )
    if length < corank:
        return Verdict(
            status="guaranteed",
            reasons=(("strict-inequality", f"ell(A_L) = {length} < {corank} = rk(target) - rk(L)", (length, corank)),),
        )
    # equality case: the refinement is applied only for targets of
    # signature (0, 24)
    if (p, n) != (0, 24):
        return Verdict(status="unknown")
    odd_primes = sorted({q for d in form.invariant_factors for q in _prime_factors(d) if q != 2})
    for q in odd_primes:
        if ell_p(form, q) >= corank:
            return Verdict(status="unknown")
    try:
        splits = splits_off_a1(form)
    except TooLarge:
        return Verdict(status="unknown")
    if splits:
        return Verdict(
            status="guaranteed",
            reasons=(
                (
                    "equality-refinement",
                    f"ell = {corank} with strict odd-Sylow inequalities and an A1(-1) split of the 2-part",
                    (length, corank),
                ),
            ),
        )
    return Verdict(status="unknown")


def nikulin_uniqueness(lat, target_sig):
    """Criterion for existence-and-uniqueness of a primitive embedding.

    Guaranteed when the signature strictly fits and ell(A_L) + 2 <=
    (p+n) - rk(L); otherwise unknown.
    """
    p, n = target_sig
    assert exists_even_unimodular(target_sig), "target must be even unimodular"
    form = disc_form(lat)
    lp, ln, lz = lat.signature()
    assert lz == 0
    if not (lp < p and ln < n):
        return Verdict(status="unknown")
    corank = (p + n) - lat.rank
    length = ell(form)
    if length + 2 <= corank:
        return Verdict(
            status="guaranteed",
            reasons=(("uniqueness-inequality", f"ell(A_L) + 2 = {length + 2} <= {corank} = rk(target) - rk(L)", (length, corank)),),
        )
    return Verdict(status="unknown")


def orthogonal_partner_spec(lat, target_sig):
    """Signature and discriminant form any primitive complement must have."""
    p, n = target_sig
    assert exists_even_unimodular(target_sig), "target must be even unimodular"
    lp, ln, lz = lat.signature()
    assert lz == 0
    assert lp <= p and ln <= n and lat.rank < p + n, "lattice does not fit in the target"
    return (p - lp, n - ln), negate(disc_form(lat))


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def search_embedding(src, dst, node_cap=SEARCH_NODE_CAP):
    """Backtracking search for an isometric embedding of src into dst.

    Both lattices must be definite of the same sign.  Basis vectors are
    placed in order of decreasing |norm|; candidate images come from exact
    short-vector enumeration (both sign classes) and are pruned by pairwise
    inner products.  Returns an EmbeddingWitness or None; None without a
    cap hit means no embedding exists.
    """
    neg = src.is_negative_definite()
    if neg:
        assert dst.is_negative_definite(), "source and target signs differ"
        sign = -1
    else:
        assert src.is_positive_definite() and dst.is_positive_definite()
        sign = 1
    if src.rank > dst.rank:
        return None
    g_src = src.gram_rows()
    g_dst = dst.gram_rows()
    order = sorted(range(src.rank), key=lambda i: -abs(g_src[i][i]))
    max_norm = max(abs(g_src[i][i]) for i in range(src.rank))
    pos_dst = g_dst if sign > 0 else exact.mat_neg(g_dst)
    candidates = {}
    by_norm = {}
    for v, nv in short_vectors(_as_lattice(pos_dst), max_norm, node_budget=node_cap):
        by_norm.setdefault(nv, []).append(v)
    for i in order:
        nm = abs(g_src[i][i])
        cands = []
        for v in by_norm.get(nm, []):
            cands.append(v)
            cands.append([-x for x in v])
        candidates[i] = cands

    images = [None] * src.rank
    nodes = 0

    def rec(k):
        nonlocal nodes
        if k == len(order):
            return True
        i = order[k]
        for v in candidates[i]:
            nodes += 1
            if nodes > node_cap:
                raise ResourceCap("embedding search node cap exceeded")
            ok = True
            for j in order[:k]:
                if exact.dot(v, images[j], g_dst) != g_src[i][j]:
                    ok = False
                    break
            if ok:
                images[i] = v
                if rec(k + 1):
                    return True
                images[i] = None
        return False

    if not rec(0):
        return None
    rows = [list(images[i]) for i in range(src.rank)]
    return EmbeddingWitness(map=rows, primitive=_is_saturated_image(rows, dst))


def _as_lattice(gram):
    from .lattice import Lattice

    return Lattice(gram=gram)


def _is_saturated_image(rows, dst):
    sat = saturation_of_rows(dst, rows)
    h, _ = exact.hnf([list(r) for r in rows])
    h = [r for r in h if any(r)]
    return h == sat


def verify_embedding(witness, src, dst):
    """Recheck a witness: exact Gram identity and primitivity flag."""
    rows = witness.map_rows()
    if len(rows) != src.rank or any(len(r) != dst.rank for r in rows):
        return False
    got = exact.mat_mul(exact.mat_mul(rows, dst.gram_rows()), exact.transpose(rows))
    if got != src.gram_rows():
        return False
    return _is_saturated_image(rows, dst) == witness.primitive
