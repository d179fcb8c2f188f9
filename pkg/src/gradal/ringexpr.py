"""Ring expressions and their normal form.

Every ring this package handles is determined by four pieces of data: a
base (Z or Q), an exponent group E, a grading group G, a degree map
delta: E -> G, plus a flag marking the graded ring of fractions.  The
monomials are e_f for f in E, the degree of e_f is delta(f), and the
underlying ring is the group algebra base[E].

Constructors build an expression tree; normalize folds the tree into a
NormalForm.  The fold is designed so that re-expressing a normal form
with as_expr and normalizing again reproduces it field for field, which
the tests rely on.
"""

from dataclasses import dataclass

from .abelian import (
    FgGroup,
    GroupElem,
    GroupHom,
    add_homs,
    compose,
    direct_sum,
    hom_image,
    hom_kernel,
    quotient_by,
    solve_in_subgroup,
    subgroup_generated_by,
    zero_hom,
)
from .errors import (
    GradalError,
    NotASubgroupError,
    NotEntireError,
    NotSurjectiveError,
    ParentMismatchError,
    TorsionKernelError,
)

__all__ = [
    "NormalForm",
    "Classification",
    "BaseZ",
    "BaseQ",
    "FineGroupAlgebra",
    "CoarseGroupAlgebra",
    "Coarsen",
    "RestrictGrading",
    "ExtendGrading",
    "FractionField",
    "normalize",
    "classify",
    "coarsen",
    "group_algebra",
    "regrade_restrict",
    "regrade_extend",
    "restrict_data",
    "fraction_field",
    "as_expr",
]


@dataclass(frozen=True)
class NormalForm:
    base: str
    egroup: FgGroup
    ggroup: FgGroup
    delta: GroupHom
    fraction: bool = False

    def __post_init__(self):
        if self.base not in ("Z", "Q"):
            raise GradalError(f"unknown base {self.base!r}")
        if self.delta.domain != self.egroup or self.delta.codomain != self.ggroup:
            raise ParentMismatchError("degree map does not match E and G")

    def describe(self):
        body = f"{self.base}[{self.egroup}] graded by {self.ggroup}"
        return f"Frac({body})" if self.fraction else body


@dataclass(frozen=True)
class Classification:
    entire: bool
    simple: bool
    noetherian: bool
    support: FgGroup
    support_embedding: GroupHom
    full_support: bool


@dataclass(frozen=True)
class BaseZ:
    pass


@dataclass(frozen=True)
class BaseQ:
    pass


@dataclass(frozen=True)
class FineGroupAlgebra:
    inner: object
    group: FgGroup


@dataclass(frozen=True)
class CoarseGroupAlgebra:
    inner: object
    group: FgGroup


@dataclass(frozen=True)
class Coarsen:
    inner: object
    psi: GroupHom


@dataclass(frozen=True)
class RestrictGrading:
    inner: object
    gens: tuple[GroupElem, ...]


@dataclass(frozen=True)
class ExtendGrading:
    inner: object
    embed: GroupHom


@dataclass(frozen=True)
class FractionField:
    inner: object


_TRIVIAL = FgGroup(0, ())


def _base_nf(base):
    return NormalForm(base, _TRIVIAL, _TRIVIAL, zero_hom(_TRIVIAL, _TRIVIAL))


def group_algebra(nf, f, kind):
    """Adjoin the exponent group f to nf.

    fine: new degrees live in G + f, the adjoined exponents graded by
    themselves.  coarse: new exponents are degree-invisible, G unchanged.
    """
    if kind not in ("fine", "coarse"):
        raise GradalError(f"unknown group algebra kind {kind!r}")
    if nf.fraction:
        raise GradalError(
            "adjoin exponents before passing to fractions, not after")
    ds_e = direct_sum(nf.egroup, f)
    if kind == "fine":
        ds_g = direct_sum(nf.ggroup, f)
        delta = add_homs(
            compose(ds_g.inj1, compose(nf.delta, ds_e.proj1)),
            compose(ds_g.inj2, ds_e.proj2))
        return NormalForm(nf.base, ds_e.group, ds_g.group, delta, False)
    delta = compose(nf.delta, ds_e.proj1)
    return NormalForm(nf.base, ds_e.group, nf.ggroup, delta, False)


def coarsen(nf, psi):
    """Push the grading through a surjection psi of grading groups."""
    if psi.domain != nf.ggroup:
        raise ParentMismatchError("psi must start at the grading group")
    if not psi.is_surjective():
        raise NotSurjectiveError("coarsening map is not onto")
    if nf.fraction:
        k, _ = hom_kernel(psi)
        if not k.is_torsionfree:
            raise TorsionKernelError(
                "cannot coarsen a fraction ring along a map with torsion kernel")
    return NormalForm(nf.base, nf.egroup, psi.codomain,
                      compose(psi, nf.delta), nf.fraction)


def restrict_data(nf, gens):
    """Restrict to degrees inside the subgroup the gens generate.

    Returns (restricted NormalForm, kappa) where kappa embeds the new
    exponent group into the old one; callers transporting elements need
    kappa, plain regrading does not.
    """
    if nf.fraction:
        raise GradalError(
            "restricting a fraction ring is not supported; restrict first")
    for x in gens:
        if x.group != nf.ggroup:
            raise ParentMismatchError("subgroup generators must live in G")
    q, proj = quotient_by(nf.ggroup, list(gens))
    e2, kappa = hom_kernel(compose(proj, nf.delta))
    f, iota_f = subgroup_generated_by(nf.ggroup, list(gens))
    cols = []
    for gen in e2.generators():
        gval = nf.delta.apply(kappa.apply(gen))
        x = solve_in_subgroup(iota_f, gval)
        if x is None:
            raise NotASubgroupError("degree escaped the subgroup")
        cols.append(list(x.coords))
    mat = tuple(tuple(cols[j][i] for j in range(e2.dim))
                for i in range(f.dim))
    delta2 = GroupHom(e2, f, mat)
    return NormalForm(nf.base, e2, f, delta2, False), kappa


def regrade_restrict(nf, gens):
    nf2, _ = restrict_data(nf, gens)
    return nf2


def regrade_extend(nf, embed):
    """View the grading inside a bigger group via an embedding."""
    if embed.domain != nf.ggroup:
        raise ParentMismatchError("embedding must start at the grading group")
    k, _ = hom_kernel(embed)
    if not k.is_trivial:
        raise NotASubgroupError("grading extension map is not injective")
    return NormalForm(nf.base, nf.egroup, embed.codomain,
                      compose(embed, nf.delta), nf.fraction)


def fraction_field(nf):
    """Graded ring of fractions: homogeneous nonzero denominators."""
    if nf.fraction:
        return nf
    k, _ = hom_kernel(nf.delta)
    if not k.is_torsionfree:
        raise NotEntireError(
            "ring has homogeneous zero divisors, no fraction ring")
    return NormalForm(nf.base, nf.egroup, nf.ggroup, nf.delta, True)


def normalize(expr):
    if isinstance(expr, BaseZ):
        return _base_nf("Z")
    if isinstance(expr, BaseQ):
        return _base_nf("Q")
    if isinstance(expr, NormalForm):
        return expr
    if isinstance(expr, FineGroupAlgebra):
        return group_algebra(normalize(expr.inner), expr.group, "fine")
    if isinstance(expr, CoarseGroupAlgebra):
        return group_algebra(normalize(expr.inner), expr.group, "coarse")
    if isinstance(expr, Coarsen):
        return coarsen(normalize(expr.inner), expr.psi)
    if isinstance(expr, RestrictGrading):
        return regrade_restrict(normalize(expr.inner), expr.gens)
    if isinstance(expr, ExtendGrading):
        return regrade_extend(normalize(expr.inner), expr.embed)
    if isinstance(expr, FractionField):
        return fraction_field(normalize(expr.inner))
    raise GradalError(f"not a ring expression: {expr!r}")


def classify(nf):
    """Entire / simple / noetherian plus the degree support subgroup.

    entire: no homogeneous zero divisors, equivalent to the kernel of the
    degree map being torsionfree.  simple: every nonzero homogeneous
    element invertible; over Q that forces an injective degree map, over
    Z it never holds (2 is not invertible), and a fraction ring always
    qualifies.  noetherian: always, the exponent group is finitely
    generated over a noetherian base.
    """
    k, _ = hom_kernel(nf.delta)
    if nf.fraction:
        entire = True
        simple = True
    else:
        entire = k.is_torsionfree
        simple = nf.base == "Q" and k.is_trivial
    support, emb = hom_image(nf.delta)
    q, _ = quotient_by(nf.ggroup,
                       [nf.delta.apply(g) for g in nf.egroup.generators()])
    return Classification(entire, simple, True, support, emb, q.is_trivial)


def as_expr(nf):
    """Rebuild an expression whose normal form is nf, field for field."""
    base = BaseZ() if nf.base == "Z" else BaseQ()
    expr = FineGroupAlgebra(base, nf.egroup)
    support, emb = hom_image(nf.delta)
    cols = []
    for gen in nf.egroup.generators():
        x = solve_in_subgroup(emb, nf.delta.apply(gen))
        if x is None:
            raise NotASubgroupError("degree map escaped its own image")
        cols.append(list(x.coords))
    mat = tuple(tuple(cols[j][i] for j in range(nf.egroup.dim))
                for i in range(support.dim))
    onto_support = GroupHom(nf.egroup, support, mat)
    expr = Coarsen(expr, onto_support)
    expr = ExtendGrading(expr, emb)
    if nf.fraction:
        expr = FractionField(expr)
    return expr
