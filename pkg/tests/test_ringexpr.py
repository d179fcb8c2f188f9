"""Ring constructions, normal forms, and classification."""

import pytest

from _oracles import zero_divisor_pair_bruteforce
from gradal.abelian import FgGroup, GroupHom, hom_equal, identity_hom
from gradal.errors import GradalError, NotEntireError, NotSurjectiveError
from gradal.ringexpr import (
    BaseQ,
    BaseZ,
    as_expr,
    classify,
    coarsen,
    fraction_field,
    group_algebra,
    normalize,
    regrade_extend,
    regrade_restrict,
    restrict_data,
)

Q = normalize(BaseQ())
Z = normalize(BaseZ())


def catalog():
    out = [Q, Z]
    for base in (Q, Z):
        for grp in (FgGroup(1, ()), FgGroup(2, ()), FgGroup(0, (2,)),
                    FgGroup(0, (4,)), FgGroup(1, (2,)), FgGroup(0, (2, 4))):
            for kind in ("fine", "coarse"):
                out.append(group_algebra(base, grp, kind))
    fine2 = group_algebra(Q, FgGroup(2, ()), "fine")
    out.append(coarsen(fine2, GroupHom(fine2.ggroup, FgGroup(1, ()),
                                       ((1, 1),))))
    finet = group_algebra(Q, FgGroup(1, (2,)), "fine")
    out.append(coarsen(finet, GroupHom(finet.ggroup, FgGroup(1, ()),
                                       ((1, 0),))))
    out.append(fraction_field(group_algebra(Q, FgGroup(1, ()), "fine")))
    return out


def test_base_shapes():
    assert Q.base == "Q" and Q.egroup.is_trivial and Q.ggroup.is_trivial
    assert Z.base == "Z"
    assert not Q.fraction


def test_fine_algebra_shape():
    nf = group_algebra(Q, FgGroup(1, (2,)), "fine")
    assert nf.egroup == FgGroup(1, (2,))
    assert nf.ggroup == FgGroup(1, (2,))
    assert hom_equal(nf.delta, identity_hom(nf.egroup))


def test_coarse_algebra_shape():
    nf = group_algebra(Q, FgGroup(1, (2,)), "coarse")
    assert nf.egroup == FgGroup(1, (2,))
    assert nf.ggroup.is_trivial
    for f in nf.egroup.box_elements(1):
        assert nf.delta.apply(f).is_zero


def test_iterated_fine_over_coarse():
    inner = group_algebra(Q, FgGroup(0, (2,)), "coarse")
    nf = group_algebra(inner, FgGroup(1, ()), "fine")
    assert nf.egroup == FgGroup(1, (2,))
    assert nf.ggroup == FgGroup(1, ())
    # Degree of a mixed exponent is its free part only.
    assert nf.delta.apply(nf.egroup.element((3, 1))).coords == (3,)


def test_coarsen_composes_degree():
    fine2 = group_algebra(Q, FgGroup(2, ()), "fine")
    psi = GroupHom(fine2.ggroup, FgGroup(1, ()), ((1, 1),))
    rc = coarsen(fine2, psi)
    assert rc.ggroup == FgGroup(1, ())
    assert rc.egroup == fine2.egroup
    f = rc.egroup.element((2, 3))
    assert rc.delta.apply(f).coords == (5,)


def test_coarsen_requires_surjective():
    fine1 = group_algebra(Q, FgGroup(1, ()), "fine")
    psi = GroupHom(fine1.ggroup, FgGroup(1, ()), ((2,),))
    with pytest.raises(NotSurjectiveError):
        coarsen(fine1, psi)


def test_restrict_shape_and_membership():
    fine2 = group_algebra(Q, FgGroup(2, ()), "fine")
    sub_gens = [fine2.ggroup.element((2, 0)), fine2.ggroup.element((0, 1))]
    nf, kappa = restrict_data(fine2, sub_gens)
    assert kappa.domain == nf.egroup
    assert kappa.codomain == fine2.egroup
    assert kappa.is_injective()
    # Every restricted exponent lands in the generated subgroup.
    for f in nf.egroup.box_elements(1):
        img = kappa.apply(f)
        assert img.coords[0] % 2 == 0


def test_restrict_rejects_fraction():
    fr = fraction_field(group_algebra(Q, FgGroup(1, ()), "fine"))
    with pytest.raises(GradalError):
        regrade_restrict(fr, [fr.ggroup.element((2,))])


def test_extend_keeps_support():
    fine1 = group_algebra(Q, FgGroup(1, ()), "fine")
    embed = GroupHom(FgGroup(1, ()), FgGroup(2, ()), ((1,), (0,)))
    nf = regrade_extend(fine1, embed)
    assert nf.ggroup == FgGroup(2, ())
    cls = classify(nf)
    assert not cls.full_support
    assert cls.support.rank == 1


def test_fraction_field_gates():
    ent = group_algebra(Q, FgGroup(1, ()), "fine")
    fr = fraction_field(ent)
    assert fr.fraction
    not_ent = group_algebra(Q, FgGroup(0, (2,)), "coarse")
    with pytest.raises(NotEntireError):
        fraction_field(not_ent)


def test_normalize_as_expr_round_trip():
    for nf in catalog():
        assert normalize(as_expr(nf)) == nf


def test_normalize_idempotent_on_constructors():
    expr = BaseQ()
    nf = normalize(expr)
    assert normalize(as_expr(nf)) == nf
    nf2 = group_algebra(nf, FgGroup(1, (2,)), "coarse")
    assert normalize(as_expr(nf2)) == nf2


def test_classification_flags_against_bruteforce():
    for nf in catalog():
        cls = classify(nf)
        assert cls.noetherian
        if nf.fraction:
            assert cls.entire and cls.simple
            continue
        pair = zero_divisor_pair_bruteforce(nf)
        assert (pair is None) == cls.entire


def test_simple_criterion():
    # Over Q with injective degree map every nonzero homogeneous element
    # is invertible; over Z or with a kernel it is not.
    assert classify(group_algebra(Q, FgGroup(1, ()), "fine")).simple
    assert classify(group_algebra(Q, FgGroup(0, (2,)), "fine")).simple
    assert not classify(group_algebra(Z, FgGroup(1, ()), "fine")).simple
    assert not classify(group_algebra(Q, FgGroup(1, ()), "coarse")).simple
    fr = fraction_field(group_algebra(Z, FgGroup(1, ()), "fine"))
    assert classify(fr).simple


def test_support_full_on_plain_algebras():
    for nf in catalog():
        cls = classify(nf)
        if nf.fraction:
            continue
        assert cls.full_support
