"""Finite quadratic forms on discriminant groups.

A form is carried by invariant factors d1 | d2 | ... | dk (each > 1) and a
symmetric rational matrix Q: for x in the group, q(x) = x^T Q x mod 2Z and
b(x, y) = x^T Q y mod Z.  Values are kept as canonical representatives,
q in [0, 2) and b in [0, 1).
"""

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import Degenerate, DegenerateForm, OddLattice, TooLarge

GAUSS_SUM_CAP = 10**6
A1_SPLIT_CAP = 2**16
ISO_CAP = 4096


def _red2(x):
    """Reduce a rational into [0, 2)."""
    return Fraction(x) % 2


def _red1(x):
    """Reduce a rational into [0, 1)."""
    return Fraction(x) % 1


@dataclass(frozen=True)
class FiniteQuadraticForm:
    invariant_factors: tuple
    q_matrix: tuple

    def __post_init__(self):
        ds = tuple(int(d) for d in self.invariant_factors)
        for a, b in zip(ds, ds[1:]):
            assert b % a == 0, "invariant factors must form a divisibility chain"
        assert all(d > 1 for d in ds)
        k = len(ds)
        q = [
            [
                _red2(self.q_matrix[i][j]) if i == j else _red1(self.q_matrix[i][j])
                for j in range(k)
            ]
            for i in range(k)
        ]
        assert all(q[i][j] == q[j][i] for i in range(k) for j in range(k))
        for i in range(k):
            assert (ds[i] * ds[i] * q[i][i]) % 2 == 0, "q not defined mod 2Z"
            for j in range(k):
                assert (ds[i] * q[i][j]) % 1 == 0, "b not defined mod Z"
        object.__setattr__(self, "invariant_factors", ds)
        object.__setattr__(self, "q_matrix", tuple(tuple(row) for row in q))

    @property
    def ngens(self):
        return len(self.invariant_factors)

    def order(self):
        return math.prod(self.invariant_factors)

    def elements(self):
        """All elements as coefficient tuples (may be large)."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def q(self, x):
        """q(x) in [0, 2)."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.q_matrix[i]
            total += row[i] * xi * xi
            for j in range(i + 1, len(x)):
                total += 2 * row[j] * xi * x[j]
        return _red2(total)

    def b(self, x, y):
        """b(x, y) in [0, 1)."""
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.q_matrix[i]
            for j, yj in enumerate(y):
                if yj:
                    total += row[j] * xi * yj
        return _red1(total)

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def scale(self, n, x):
        return tuple((n * a) % d for a, d in zip(x, self.invariant_factors))

    def element_order(self, x):
        return math.lcm(*(d // math.gcd(d, a) for a, d in zip(x, self.invariant_factors))) if x else 1


TRIVIAL_FORM = FiniteQuadraticForm(invariant_factors=(), q_matrix=())


def disc_form(lat):
    """The discriminant quadratic form of an even nondegenerate lattice."""
    g = lat.gram_rows()
    if any(g[i][i] % 2 for i in range(len(g))):
        raise OddLattice("discriminant form requires an even lattice")
    if exact.det(g) == 0:
        raise Degenerate("lattice is degenerate")
    s, u, v = exact.snf(g)
    w = exact.to_ints(exact.rat_inverse(exact.to_fractions(v)))
    g_inv = exact.rat_inverse(exact.to_fractions(g))
    q_full = exact.mat_mul(exact.mat_mul(w, g_inv), exact.transpose(w))
    keep = [i for i in range(len(g)) if s[i][i] > 1]
    factors = tuple(s[i][i] for i in keep)
    q = tuple(tuple(q_full[i][j] for j in keep) for i in keep)
    return FiniteQuadraticForm(invariant_factors=factors, q_matrix=q)


def disc_generators_dual(lat):
    """Dual vectors representing the discriminant generators of a lattice.

    Returns rational rows in the basis of the lattice; row i generates the
    i-th cyclic factor of L*/L, matching disc_form(lat).
    """
    g = lat.gram_rows()
    s, u, v = exact.snf(g)
    w = exact.to_ints(exact.rat_inverse(exact.to_fractions(v)))
    g_inv = exact.rat_inverse(exact.to_fractions(g))
    dual = exact.mat_mul(w, g_inv)
    return [dual[i] for i in range(len(g)) if s[i][i] > 1]


def ell(form):
    """Minimal number of generators of the underlying group."""
    return form.ngens


def ell_p(form, p):
    """Minimal number of generators of the p-Sylow subgroup."""
    return sum(1 for d in form.invariant_factors if d % p == 0)


def negate(form):
    """The same group with q replaced by -q."""
    return FiniteQuadraticForm(
        invariant_factors=form.invariant_factors,
        q_matrix=tuple(tuple(-x for x in row) for row in form.q_matrix),
    )


def signature_mod8(form, cap=GAUSS_SUM_CAP, tol=1e-6):
    """Signature mod 8 from the Gauss sum (Milgram's formula).

    Sum of exp(pi*i*q(a)) over the group equals sqrt(|A|)*exp(2*pi*i*s/8);
    returns s mod 8.  The modulus is asserted to within tol*sqrt(|A|).
    """
    n = form.order()
    if n > cap:
        raise TooLarge(f"group order {n} exceeds Gauss-sum cap {cap}")
    if n == 1:
        return 0
    # integer phases: q(a) = phase / m with phases mod 2m
    m = math.lcm(*(x.denominator for row in form.q_matrix for x in row), 1)
    qm = [[int(x * m) for x in row] for row in form.q_matrix]
    roots = [cmath.exp(1j * cmath.pi * k / m) for k in range(2 * m)]
    total = 0j
    k = form.ngens
    for a in form.elements():
        phase = 0
        for i in range(k):
            ai = a[i]
            if not ai:
                continue
            row = qm[i]
            phase += row[i] * ai * ai
            for j in range(i + 1, k):
                phase += 2 * row[j] * ai * a[j]
        total += roots[phase % (2 * m)]
    mag = math.sqrt(n)
    if abs(abs(total) - mag) > tol * mag:
        raise DegenerateForm("Gauss sum modulus is not sqrt(|A|); b is degenerate")
    s = cmath.phase(total) * 4 / cmath.pi
    res = round(s) % 8
    assert abs(s - round(s)) < 1e-4
    return res


def _two_part_generators(form):
    """Generators of the 2-Sylow subgroup, as (element, order-2^v) pairs."""
    gens = []
    for i, d in enumerate(form.invariant_factors):
        v = 1
        while d % (2 ** (v + 1)) == 0:
            v += 1
        if d % 2 == 0:
            x = [0] * form.ngens
            x[i] = d // (2**v)
            gens.append((tuple(x), 2**v))
    return gens


def splits_off_a1(form, positive=False, cap=A1_SPLIT_CAP):
    """Whether the form splits off the discriminant form of A1(-1).

    Searches the 2-Sylow subgroup by brute force for an order-2 element a
    with q(a) = 3/2 (or 1/2 with positive=True) that generates an orthogonal
    direct summand.  Odd parts always split off, so only the 2-part matters.
    """
    gens = _two_part_generators(form)
    size = math.prod(o for _, o in gens)
    if size > cap:
        raise TooLarge(f"2-part order {size} exceeds cap {cap}")
    target_q = Fraction(1, 2) if positive else Fraction(3, 2)
    two_part = []
    for coeffs in itertools.product(*(range(o) for _, o in gens)):
        x = tuple([0] * form.ngens)
        for c, (g, _) in zip(coeffs, gens):
            x = form.add(x, form.scale(c, g))
        two_part.append(x)
    zero = tuple([0] * form.ngens)
    for a in two_part:
        if a == zero or form.scale(2, a) != zero:
            continue
        if form.q(a) != target_q or form.b(a, a) != Fraction(1, 2):
            continue
        perp = [x for x in two_part if form.b(x, a) == 0]
        if len(perp) * 2 == len(two_part) and a not in perp:
            return True
    return False


def find_isomorphism(f1, f2, cap=ISO_CAP):
    """A q-preserving group isomorphism f1 -> f2, or None.

    Returned as a list of images (one element of f2 per generator of f1).
    Brute force over generator images with order and pairing pruning.
    """
    if f1.order() > cap or f2.order() > cap:
        raise TooLarge("form order exceeds isomorphism-search cap")
    if f1.invariant_factors != f2.invariant_factors:
        return None
    if not f1.invariant_factors:
        return []
    elems2 = list(f2.elements())
    by_order_q = {}
    for x in elems2:
        by_order_q.setdefault((f2.element_order(x), f2.q(x)), []).append(x)
    gens1 = []
    for i, d in enumerate(f1.invariant_factors):
        g = [0] * f1.ngens
        g[i] = 1
        gens1.append(tuple(g))
    n = f1.order()

    def span_size(images):
        seen = {tuple([0] * f2.ngens)}
        frontier = [tuple([0] * f2.ngens)]
        for img, d in zip(images, f1.invariant_factors):
            new = set(seen)
            for k in range(1, d):
                shift = f2.scale(k, img)
                new.update(f2.add(x, shift) for x in seen)
            seen = new
        return len(seen)

    def rec(idx, images):
        if idx == len(gens1):
            return images if span_size(images) == n else None
        g = gens1[idx]
        d = f1.invariant_factors[idx]
        for cand in by_order_q.get((d, f1.q(g)), []):
            if all(
                f2.b(cand, img) == f1.b(g, gens1[j])
                for j, img in enumerate(images)
            ):
                res = rec(idx + 1, images + [cand])
                if res is not None:
                    return res
        return None

    return rec(0, [])


def iso_form_small(f1, f2, cap=ISO_CAP):
    """Whether two small finite quadratic forms are isomorphic."""
    return find_isomorphism(f1, f2, cap=cap) is not None


def direct_sum_forms(f1, f2):
    """Orthogonal direct sum; factors renormalized to a divisibility chain."""
    factors = list(f1.invariant_factors) + list(f2.invariant_factors)
    k1 = f1.ngens
    k = len(factors)
    q = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k1):
        for j in range(k1):
            q[i][j] = f1.q_matrix[i][j]
    for i in range(f2.ngens):
        for j in range(f2.ngens):
            q[k1 + i][k1 + j] = f2.q_matrix[i][j]
    return _chain_normalize(factors, q)


def _chain_normalize(factors, q):
    """Rewrite generators so the orders form a divisibility chain."""
    k = len(factors)
    # Split each cyclic factor into prime-power parts, then regroup by prime.
    parts = []  # (prime power, element as coefficient vector over the old gens)
    for i, d in enumerate(factors):
        for p, e in _factorize(d).items():
            pe = p**e
            vec = [0] * k
            vec[i] = d // pe
            parts.append((pe, vec))
    # group: for each prime, sort prime powers descending; chain position j
    # collects the j-th largest power of every prime
    by_prime = {}
    for pe, vec in parts:
        p = _smallest_prime(pe)
        by_prime.setdefault(p, []).append((pe, vec))
    for p in by_prime:
        by_prime[p].sort(key=lambda t: -t[0])
    depth = max((len(v) for v in by_prime.values()), default=0)
    new_factors = []
    new_gens = []
    for slot in range(depth - 1, -1, -1):
        d = 1
        vec = [0] * k
        for p, lst in by_prime.items():
            if slot < len(lst):
                pe, v = lst[slot]
                d *= pe
                vec = [a + b for a, b in zip(vec, v)]
        new_factors.append(d)
        new_gens.append(vec)
    # ascending chain
    if not new_factors:
        return TRIVIAL_FORM
    m = len(new_factors)
    newq = [
        [
            sum(
                Fraction(q[a][bb]) * new_gens[i][a] * new_gens[j][bb]
                for a in range(k)
                for bb in range(k)
            )
            for j in range(m)
        ]
        for i in range(m)
    ]
    return FiniteQuadraticForm(
        invariant_factors=tuple(new_factors), q_matrix=tuple(tuple(r) for r in newq)
    )


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _smallest_prime(n):
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def form_to_obj(form):
    return {
        "factors": list(form.invariant_factors),
        "q": [[f"{x.numerator}/{x.denominator}" for x in row] for row in form.q_matrix],
    }
