"""Isometry group actions on lattices.

Generators are integer matrices acting on rows: v |-> v.g with
g.G.g^T = G.  Provides the group closure, invariant/coinvariant lattices,
the induced action on discriminant groups, and extension by the identity.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import exact
from .errors import NotIntegral, NotStable, ResourceCap
from .lattice import Lattice, lattice_from_obj, lattice_to_obj, orth_complement, sublattice

CLOSURE_CAP = 10**6


@dataclass(frozen=True)
class GroupAction:
    lattice: Lattice
    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(tuple(int(x) for x in row) for row in g) for g in self.generators)
        g_mat = self.lattice.gram_rows()
        n = self.lattice.rank
        for g in gens:
            rows = [list(r) for r in g]
            assert len(rows) == n and all(len(r) == n for r in rows)
            assert abs(exact.det(rows)) == 1, "generator not invertible over Z"
            assert (
                exact.mat_mul(exact.mat_mul(rows, g_mat), exact.transpose(rows)) == g_mat
            ), "generator is not an isometry"
        object.__setattr__(self, "generators", gens)

    def generator_rows(self):
        return [[list(r) for r in g] for g in self.generators]


def closure(action, cap=CLOSURE_CAP):
    """All elements of the generated group, in a canonical order.

    Breadth-first products of generators; complete whenever the group order
    is at most cap.
    """
    n = action.lattice.rank
    ident = tuple(tuple(row) for row in exact.identity(n))
    gens = list(action.generators)
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = exact.mat_mul([list(r) for r in p], [list(r) for r in g])
                qt = tuple(tuple(row) for row in q)
                if qt not in seen:
                    seen.add(qt)
                    new.append(qt)
                    if len(seen) > cap:
                        raise ResourceCap(f"group order exceeds closure cap {cap}")
        frontier = new
    return [[list(r) for r in m] for m in sorted(seen)]


def invariant_lattice(action):
    """The saturated fixed sublattice of the action."""
    lat = action.lattice
    n = lat.rank
    if not action.generators:
        return sublattice(lat, exact.identity(n))
    # common kernel of (g - I): stack the matrices side by side
    stacked = [[] for _ in range(n)]
    for g in action.generators:
        for i in range(n):
            for j in range(n):
                stacked[i].append(g[i][j] - (1 if i == j else 0))
    kernel = exact.int_kernel(stacked)
    return sublattice(lat, kernel)


def coinvariant_lattice(action):
    """The orthogonal complement of the invariant lattice."""
    return orth_complement(invariant_lattice(action))


def restrict_action(action, sub):
    """The action restricted to a stable sublattice, in the sublattice basis."""
    basis = [list(r) for r in sub.basis_rows()]
    restricted = []
    for g in action.generators:
        imgs = exact.mat_mul(exact.to_fractions(basis), exact.to_fractions([list(r) for r in g]))
        sol = _solve_rows_in_basis(imgs, basis)
        if sol is None or not exact.is_integral(sol):
            raise NotStable("generator does not preserve the sublattice")
        restricted.append(exact.to_ints(sol))
    return GroupAction(lattice=Lattice(gram=sub.gram_rows()), generators=tuple(restricted))


def _solve_rows_in_basis(rows, basis):
    """Coefficient matrix C with C . basis = rows, or None if unsolvable."""
    bt = exact.transpose(exact.to_fractions(basis))
    # solve basis^T x^T = rows^T column by column via least squares on the
    # square system (basis basis^T) -- valid since basis has full row rank
    bbt = exact.mat_mul(exact.to_fractions(basis), bt)
    try:
        inv = exact.rat_inverse(bbt)
    except Exception:
        return None
    c = exact.mat_mul(exact.mat_mul(exact.to_fractions(rows), bt), inv)
    if exact.mat_mul(c, exact.to_fractions(basis)) != exact.to_fractions(rows):
        return None
    return c


def disc_action_is_trivial(action, sub):
    """Whether the action induced on S*/S is trivial.

    The generators must preserve the (nondegenerate) sublattice; each one
    acts trivially on the discriminant iff G_S^{-1} (g_S - I) is integral,
    where g_S is the generator restricted to the sublattice basis.
    """
    if not sub.is_nondegenerate():
        raise NotStable("discriminant action needs a nondegenerate sublattice")
    restricted = restrict_action(action, sub)
    g_inv = exact.rat_inverse(exact.to_fractions(sub.gram_rows()))
    n = sub.rank
    for g in restricted.generators:
        diff = [
            [Fraction(g[i][j] - (1 if i == j else 0)) for j in range(n)] for i in range(n)
        ]
        # (g - I) maps S* into S iff G^{-1} (g - I) is integral (dual basis
        # rows are G^{-1} in the S basis, image coefficients (g-I)^T applied)
        if not exact.is_integral(exact.mat_mul(g_inv, diff)):
            return False
    return True


def extend_by_identity(action_on_sub, sub, amb):
    """Extend an action on a primitive sublattice by the identity on S^perp.

    Each generator is extended Q-linearly as (g on S x Q) + (id on S-perp
    x Q); raises NotIntegral when the extension does not preserve amb (the
    discriminant obstruction).
    """
    s_basis = [list(r) for r in sub.basis_rows()]
    comp = orth_complement(sub)
    c_basis = [list(r) for r in comp.basis_rows()]
    assert sub.rank + comp.rank == amb.rank, "S + S-perp must span the ambient"
    full = exact.to_fractions(s_basis + c_basis)
    full_inv = exact.rat_inverse(full)
    out = []
    for g in action_on_sub.generators:
        block = [[Fraction(0)] * amb.rank for _ in range(amb.rank)]
        for i in range(sub.rank):
            for j in range(sub.rank):
                block[i][j] = Fraction(g[i][j])
        for i in range(comp.rank):
            block[sub.rank + i][sub.rank + i] = Fraction(1)
        # v acts through coordinates c = v . full_inv, c -> c . block
        ext = exact.mat_mul(exact.mat_mul(full_inv, block), full)
        if not exact.is_integral(ext):
            raise NotIntegral("extension by identity is not integral on the ambient")
        out.append(exact.to_ints(ext))
    return GroupAction(lattice=amb, generators=tuple(out))


def action_to_obj(action):
    return {
        "lattice": lattice_to_obj(action.lattice),
        "generators": action.generator_rows(),
    }


def action_from_obj(obj):
    from .catalog import make

    if "catalog" in obj:
        lat = make(obj["catalog"])
    else:
        lat = lattice_from_obj(obj["lattice"])
    return GroupAction(lattice=lat, generators=tuple(obj["generators"]))
