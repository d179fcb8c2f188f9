"""Finitely generated abelian groups in invariant factor form.

A group is written as Z^rank x Z/d1 x ... x Z/dk with 2 <= d1 | d2 | ...
| dk.  Elements are integer coordinate vectors with torsion coordinates
reduced into [0, dj).  Homomorphisms are integer matrices acting on
coordinates.  All structural operations (quotients, subgroups, kernels,
direct sums) go through Smith normal form of a presentation matrix and
return the result together with the maps that relate it to its ambient
group, since renormalization permutes and mixes coordinates.

Lattice membership and integer solving use the Hermite echelon form
instead, which keeps the two concerns independently testable.

>>> G = FgGroup(1, (4,))
>>> G.element((3, 7)).coords
(3, 3)
>>> str(G)
'Z x Z/4'
"""

from dataclasses import dataclass
from itertools import product
from math import gcd, lcm

from .errors import (
    GradalError,
    NotAHomomorphismError,
    NotASectionError,
    NotASubgroupError,
    NotSurjectiveError,
    NotTorsionfreeError,
    ParentMismatchError,
)
from .intmat import (
    hermite_columns,
    identity,
    inverse_unimodular,
    kernel_int,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve_int,
    zeros,
)

__all__ = [
    "FgGroup",
    "GroupElem",
    "GroupHom",
    "smith_normal_form",
    "hermite_columns",
    "normalize_presentation",
    "direct_sum",
    "DirectSum",
    "subgroup_generated_by",
    "quotient_by",
    "hom_kernel",
    "hom_image",
    "hom_inverse",
    "solve_in_subgroup",
    "torsion_decomposition",
    "find_section",
    "is_in_torsionfree_summand",
    "total_compare",
    "extended_compare",
    "identity_hom",
    "zero_hom",
    "add_homs",
    "compose",
    "hom_equal",
]


@dataclass(frozen=True)
class FgGroup:
    """Z^rank x Z/torsion[0] x ... with the divisibility chain enforced."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise GradalError(f"negative rank {self.rank}")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        for d in self.torsion:
            if d < 2:
                raise GradalError(f"invariant factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise GradalError(f"invariant factors {a}, {b} break the chain")

    @property
    def dim(self):
        return self.rank + len(self.torsion)

    @property
    def is_trivial(self):
        return self.dim == 0

    @property
    def is_torsionfree(self):
        return not self.torsion

    @property
    def is_finite(self):
        return self.rank == 0

    def order(self):
        """Number of elements, or None when infinite."""
        if self.rank:
            return None
        n = 1
        for d in self.torsion:
            n *= d
        return n

    def reduce(self, coords):
        coords = list(coords)
        if len(coords) != self.dim:
            raise ParentMismatchError(
                f"expected {self.dim} coordinates, got {len(coords)}")
        for j, d in enumerate(self.torsion):
            coords[self.rank + j] %= d
        return tuple(coords)

    def element(self, coords):
        return GroupElem(self, self.reduce(coords))

    def zero(self):
        return GroupElem(self, (0,) * self.dim)

    def generators(self):
        n = self.dim
        return [self.element(tuple(int(i == j) for j in range(n)))
                for i in range(n)]

    def relation_columns(self):
        """Columns spanning the relation lattice of the standard presentation."""
        cols = []
        for j, d in enumerate(self.torsion):
            col = [0] * self.dim
            col[self.rank + j] = d
            cols.append(col)
        return cols

    def elements(self):
        """All elements; only for finite groups."""
        if self.rank:
            raise GradalError("cannot enumerate an infinite group")
        for combo in product(*(range(d) for d in self.torsion)):
            yield GroupElem(self, combo)

    def torsion_elements(self):
        """All finite-order elements, embedded in this group."""
        free = (0,) * self.rank
        for combo in product(*(range(d) for d in self.torsion)):
            yield GroupElem(self, free + combo)

    def box_elements(self, box):
        """Free coordinates in [-box, box], torsion coordinates exhaustive."""
        free_ranges = [range(-box, box + 1)] * self.rank
        tor_ranges = [range(d) for d in self.torsion]
        for combo in product(*free_ranges, *tor_ranges):
            yield GroupElem(self, combo)

    def __str__(self):
        if self.is_trivial:
            return "0"
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts)


@dataclass(frozen=True)
class GroupElem:
    group: FgGroup
    coords: tuple[int, ...]

    def _check(self, other):
        if self.group != other.group:
            raise ParentMismatchError(
                f"elements of {self.group} and {other.group}")

    def __add__(self, other):
        self._check(other)
        return self.group.element(
            tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return self.group.element(
            tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return self.group.element(tuple(-a for a in self.coords))

    def __rmul__(self, k):
        return self.group.element(tuple(k * a for a in self.coords))

    @property
    def is_zero(self):
        return not any(self.coords)

    def elem_order(self):
        """Smallest k >= 1 with k*self = 0, or None for infinite order."""
        g = self.group
        if any(self.coords[:g.rank]):
            return None
        n = 1
        for j, d in enumerate(g.torsion):
            c = self.coords[g.rank + j]
            n = lcm(n, d // gcd(d, c)) if c else n
        return n

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def _canonical_rows(codomain, matrix):
    rows = [list(r) for r in matrix]
    for j, d in enumerate(codomain.torsion):
        i = codomain.rank + j
        rows[i] = [x % d for x in rows[i]]
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by its matrix on standard generators.

    Column j is the image of the j-th generator of the domain, written in
    codomain coordinates.  Rows hitting torsion coordinates are stored
    reduced, so structural equality of homs is equality of the maps.
    """

    domain: FgGroup
    codomain: FgGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = _canonical_rows(self.codomain, self.matrix)
        if len(mat) != self.codomain.dim:
            raise NotAHomomorphismError(
                f"matrix has {len(mat)} rows, codomain dim {self.codomain.dim}")
        for row in mat:
            if len(row) != self.domain.dim:
                raise NotAHomomorphismError(
                    f"matrix row width {len(row)}, domain dim {self.domain.dim}")
        object.__setattr__(self, "matrix", mat)
        # A torsion generator of order d must map to an element killed by d.
        for j, d in enumerate(self.domain.torsion):
            col = self.domain.rank + j
            img = self.codomain.element(tuple(row[col] for row in mat))
            if not (d * img).is_zero:
                raise NotAHomomorphismError(
                    f"generator of order {d} maps to an element of order "
                    f"{img.elem_order()}")

    def apply(self, elem):
        if elem.group != self.domain:
            raise ParentMismatchError(
                f"element of {elem.group}, hom domain {self.domain}")
        return self.codomain.element(mat_vec([list(r) for r in self.matrix],
                                             list(elem.coords)))

    def __call__(self, elem):
        return self.apply(elem)

    def matrix_rows(self):
        return [list(r) for r in self.matrix]

    def is_injective(self):
        k, _ = hom_kernel(self)
        return k.is_trivial

    def is_surjective(self):
        q, _ = quotient_by(self.codomain,
                           [self.apply(g) for g in self.domain.generators()])
        return q.is_trivial


def identity_hom(g):
    return GroupHom(g, g, tuple(tuple(row) for row in identity(g.dim)))


def zero_hom(a, b):
    return GroupHom(a, b, tuple(tuple(row) for row in zeros(b.dim, a.dim)))


def compose(f, g):
    """f after g."""
    if g.codomain != f.domain:
        raise ParentMismatchError("compose: codomain/domain mismatch")
    m = mat_mul(f.matrix_rows(), g.matrix_rows(), cols_b=g.domain.dim)
    return GroupHom(g.domain, f.codomain, tuple(tuple(r) for r in m))


def add_homs(f, g):
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ParentMismatchError("add_homs: shape mismatch")
    m = [[a + b for a, b in zip(ra, rb)]
         for ra, rb in zip(f.matrix, g.matrix)]
    return GroupHom(f.domain, f.codomain, tuple(tuple(r) for r in m))


def hom_equal(f, g):
    return (f.domain == g.domain and f.codomain == g.codomain
            and f.matrix == g.matrix)


def normalize_presentation(ambient_dim, rel_cols):
    """Normalize Z^ambient_dim / <rel_cols> to invariant factor form.

    Returns (group, to_normal, from_normal).  to_normal maps ambient
    coordinates onto coordinates of the normalized group; from_normal
    lifts normalized generators back, and to_normal @ from_normal is the
    identity exactly (not only modulo relations).
    """
    m = ambient_dim
    k = len(rel_cols)
    a = [[rel_cols[j][i] for j in range(k)] for i in range(m)]
    u, d, _ = smith_normal_form(a, m, k)
    diag = [d[i][i] for i in range(min(m, k))]
    torsion_idx = [i for i, val in enumerate(diag) if val >= 2]
    free_idx = [i for i in range(m) if i >= len(diag) or diag[i] == 0]
    order = free_idx + torsion_idx
    grp = FgGroup(len(free_idx), tuple(diag[i] for i in torsion_idx))
    uinv = inverse_unimodular(u)
    to_mat = [u[i][:] for i in order]
    from_mat = [[uinv[r][i] for i in order] for r in range(m)]
    return grp, to_mat, from_mat


def _subgroup_from_lattice(g, lattice_cols):
    """Subgroup of g spanned by integer columns (plus g's relations).

    Returns (s, iota) with iota an embedding of the abstract subgroup.
    """
    m = g.dim
    rels = g.relation_columns()
    cols = [list(c) for c in lattice_cols] + rels
    if not cols:
        trivial = FgGroup(0, ())
        return trivial, zero_hom(trivial, g)
    a = [[cols[j][i] for j in range(len(cols))] for i in range(m)]
    h, _, pivots = hermite_columns(a, m, len(cols))
    basis = [[h[i][c] for i in range(m)] for (_, c) in pivots]
    s = len(basis)
    if s == 0:
        trivial = FgGroup(0, ())
        return trivial, zero_hom(trivial, g)
    bmat = [[basis[j][i] for j in range(s)] for i in range(m)]
    rel_in_basis = []
    for rc in rels:
        x = solve_int(bmat, rc, m, s)
        if x is None:
            raise GradalError("relation escaped its own lattice")
        rel_in_basis.append(x)
    sub, _, from_n = normalize_presentation(s, rel_in_basis)
    lift = mat_mul(bmat, from_n, cols_b=sub.dim)
    iota = GroupHom(sub, g, tuple(tuple(r) for r in lift))
    return sub, iota


def subgroup_generated_by(g, gens):
    """Abstract subgroup generated by elements of g, with its embedding."""
    for x in gens:
        if x.group != g:
            raise ParentMismatchError(f"generator of {x.group}, ambient {g}")
    return _subgroup_from_lattice(g, [list(x.coords) for x in gens])


def quotient_by(g, gens):
    """Quotient of g by the subgroup the elements generate.

    Returns (q, proj) with proj the projection g -> q.
    """
    for x in gens:
        if x.group != g:
            raise ParentMismatchError(f"generator of {x.group}, ambient {g}")
    rel_cols = g.relation_columns() + [list(x.coords) for x in gens]
    q, to_n, _ = normalize_presentation(g.dim, rel_cols)
    proj = GroupHom(g, q, tuple(tuple(r) for r in to_n))
    return q, proj


def hom_kernel(psi):
    """Kernel of a homomorphism as (k, iota) with iota: k -> domain."""
    a, b = psi.domain, psi.codomain
    stacked = [list(row) + [rb[i] for rb in b.relation_columns()]
               for i, row in enumerate(psi.matrix_rows())]
    ker = kernel_int(stacked, b.dim, a.dim + len(b.torsion))
    xparts = [vec[:a.dim] for vec in ker]
    return _subgroup_from_lattice(a, xparts)


def hom_image(psi):
    """Image subgroup of the codomain, as (s, iota)."""
    return subgroup_generated_by(
        psi.codomain, [psi.apply(g) for g in psi.domain.generators()])


def solve_in_subgroup(iota, target):
    """Some x in the domain of iota with iota(x) = target, or None.

    When iota is injective the preimage is unique, so the answer does not
    depend on which solution the integer solver picks.
    """
    g = iota.codomain
    if target.group != g:
        raise ParentMismatchError("target does not live in the codomain")
    stacked = [list(row) + [rc[i] for rc in g.relation_columns()]
               for i, row in enumerate(iota.matrix_rows())]
    sol = solve_int(stacked, list(target.coords), g.dim,
                    iota.domain.dim + len(g.torsion))
    if sol is None:
        return None
    return iota.domain.element(sol[:iota.domain.dim])


def hom_inverse(phi):
    """Inverse of an isomorphism; raises if phi is not one."""
    a, b = phi.domain, phi.codomain
    stacked = [list(row) + [rb[i] for rb in b.relation_columns()]
               for i, row in enumerate(phi.matrix_rows())]
    cols = []
    for i in range(b.dim):
        target = [int(i == r) for r in range(b.dim)]
        sol = solve_int(stacked, target, b.dim, a.dim + len(b.torsion))
        if sol is None:
            raise GradalError("not surjective, no inverse")
        cols.append(sol[:a.dim])
    inv = GroupHom(b, a, tuple(tuple(cols[j][i] for j in range(b.dim))
                               for i in range(a.dim)))
    if not hom_equal(compose(inv, phi), identity_hom(a)):
        raise GradalError("not injective, no inverse")
    return inv


@dataclass(frozen=True)
class DirectSum:
    group: FgGroup
    inj1: GroupHom
    inj2: GroupHom
    proj1: GroupHom
    proj2: GroupHom


def direct_sum(a, b):
    """Direct sum renormalized to invariant factor form.

    The trivial-summand cases return the other group unchanged so that
    adjoining the trivial group is the identity on the nose.
    """
    if a.is_trivial:
        return DirectSum(b, zero_hom(a, b), identity_hom(b),
                         zero_hom(b, a), identity_hom(b))
    if b.is_trivial:
        return DirectSum(a, identity_hom(a), zero_hom(b, a),
                         identity_hom(a), zero_hom(a, b))
    m = a.dim + b.dim
    rel_cols = []
    for ca in a.relation_columns():
        rel_cols.append(ca + [0] * b.dim)
    for cb in b.relation_columns():
        rel_cols.append([0] * a.dim + cb)
    s, to_n, from_n = normalize_presentation(m, rel_cols)
    inj1 = GroupHom(a, s, tuple(tuple(row[:a.dim]) for row in to_n))
    inj2 = GroupHom(b, s, tuple(tuple(row[a.dim:]) for row in to_n))
    proj1 = GroupHom(s, a, tuple(tuple(from_n[i]) for i in range(a.dim)))
    proj2 = GroupHom(s, b, tuple(tuple(from_n[i]) for i in range(a.dim, m)))
    return DirectSum(s, inj1, inj2, proj1, proj2)


def torsion_decomposition(g):
    """(t, iota, rank): the torsion subgroup, its embedding, the free rank."""
    t = FgGroup(0, g.torsion)
    cols = []
    for j in range(len(g.torsion)):
        col = [0] * g.dim
        col[g.rank + j] = 1
        cols.append(col)
    mat = tuple(tuple(cols[j][i] for j in range(len(cols)))
                for i in range(g.dim))
    return t, GroupHom(t, g, mat), g.rank


def find_section(psi):
    """A section of a surjection, or None when no section exists.

    Solved generator by generator: a free generator needs any preimage, a
    torsion generator of order d needs a preimage of order dividing d,
    searched over its whole preimage coset.
    """
    a, b = psi.domain, psi.codomain
    if not psi.is_surjective():
        raise NotSurjectiveError(f"{a} -> {b} is not onto")
    stacked = [list(row) + [rb[i] for rb in b.relation_columns()]
               for i, row in enumerate(psi.matrix_rows())]
    ker = kernel_int(stacked, b.dim, a.dim + len(b.torsion))
    kbasis = [vec[:a.dim] for vec in ker]
    nk = len(kbasis)
    bk = [[kbasis[j][i] for j in range(nk)] for i in range(a.dim)]
    rels_a = a.relation_columns()
    cols = []
    for i in range(b.dim):
        target = [int(i == r) for r in range(b.dim)]
        sol = solve_int(stacked, target, b.dim, a.dim + len(b.torsion))
        if sol is None:
            raise NotSurjectiveError("generator missed despite surjectivity")
        x0 = sol[:a.dim]
        if i < b.rank:
            cols.append(x0)
            continue
        d = b.torsion[i - b.rank]
        scaled = [[d * bk[r][j] for j in range(nk)] +
                  [ra[r] for ra in rels_a] for r in range(a.dim)]
        rhs = [-d * v for v in x0]
        w = solve_int(scaled, rhs, a.dim, nk + len(rels_a))
        if w is None:
            return None
        z = mat_vec(bk, w[:nk]) if nk else [0] * a.dim
        cols.append([x + y for x, y in zip(x0, z)])
    pi = GroupHom(b, a, tuple(tuple(cols[j][i] for j in range(b.dim))
                              for i in range(a.dim)))
    if not hom_equal(compose(psi, pi), identity_hom(b)):
        raise NotASectionError("constructed map fails psi . pi = id")
    return pi


def is_in_torsionfree_summand(g, gens):
    """Whether the subgroup the gens generate lies in a torsionfree
    direct summand of g.

    Criterion: the composite of the torsion inclusion with the projection
    onto g modulo the subgroup must admit a left inverse; all candidate
    maps from the (finite) quotient side are enumerated.
    """
    for x in gens:
        if x.group != g:
            raise ParentMismatchError(f"generator of {x.group}, ambient {g}")
    if not g.torsion:
        return True
    t, iota_t, _ = torsion_decomposition(g)
    q, proj = quotient_by(g, gens)
    c = compose(proj, iota_t)
    t_elems = list(t.elements())
    candidates = []
    total = 1
    for i in range(q.dim):
        if i < q.rank:
            cand = t_elems
        else:
            o = q.torsion[i - q.rank]
            cand = [x for x in t_elems if (o * x).is_zero]
        candidates.append(cand)
        total *= len(cand)
        if total > 2_000_000:
            raise GradalError("retraction search space too large")
    t_gens = t.generators()
    want = [(tg, c.apply(tg)) for tg in t_gens]
    for combo in product(*candidates):
        ok = True
        for tg, cg in want:
            acc = t.zero()
            for coeff, tval in zip(cg.coords, combo):
                if coeff:
                    acc = acc + coeff * tval
            if acc != tg:
                ok = False
                break
        if ok:
            return True
    return False


def total_compare(f, a, b):
    """Lexicographic comparison on a torsionfree group: -1, 0 or 1."""
    if not f.is_torsionfree:
        raise NotTorsionfreeError(f"{f} has torsion")
    if a.group != f or b.group != f:
        raise ParentMismatchError("elements do not live in the given group")
    if a.coords == b.coords:
        return 0
    return -1 if a.coords < b.coords else 1


def extended_compare(g, iota, a, b):
    """Partial order induced by a torsionfree subgroup iota: f -> g.

    Returns -1, 0, 1 when a - b lies in the subgroup (compared there
    lexicographically) and None when the difference is outside, i.e. the
    elements are incomparable.
    """
    f = iota.domain
    if not f.is_torsionfree:
        raise NotTorsionfreeError(f"{f} has torsion")
    if iota.codomain != g:
        raise ParentMismatchError("iota does not land in g")
    if a.group != g or b.group != g:
        raise ParentMismatchError("elements do not live in g")
    k, _ = hom_kernel(iota)
    if not k.is_trivial:
        raise NotASubgroupError("iota is not an embedding")
    d = a - b
    stacked = [list(row) + [rc[i] for rc in g.relation_columns()]
               for i, row in enumerate(iota.matrix_rows())]
    sol = solve_int(stacked, list(d.coords), g.dim,
                    f.dim + len(g.torsion))
    if sol is None:
        return None
    u = sol[:f.dim]
    if not any(u):
        return 0
    return -1 if tuple(u) < (0,) * f.dim else 1
