"""Witness-based integrality for graded ring extensions.

Integrality of x over a subring R is always established by an explicit
monic equation whose coefficients are homogeneous elements of R with
degrees pinned to multiples of deg(x); almost-integrality by an explicit
membership x^(k+1) in the R-span of 1, x, ..., x^k.  Searches are
bounded (max degree, exponent box) and report NoWitnessUpTo instead of
claiming non-integrality.  Both searches reduce to the same exact linear
system, solved rationally over base Q and by Hermite form over base Z,
so the two notions agree judgment for judgment at aligned bounds.

The module also houses the explicit constructions the package exists to
reproduce: the torsion idempotent that breaks integral closedness, the
graded euclidean division over a Laurent extension, the isomorphism
splitting a free grading summand into an adjoined exponent group, and
the kernel-absorbing embedding attached to a section of a coarsening.
"""

from dataclasses import dataclass
from fractions import Fraction as Rational
from math import lcm

from .abelian import (
    FgGroup,
    GroupElem,
    GroupHom,
    add_homs,
    compose,
    direct_sum,
    hom_equal,
    hom_image,
    hom_inverse,
    hom_kernel,
    identity_hom,
    kernel_int,
    solve_in_subgroup,
    subgroup_generated_by,
)
from .element import (
    Element,
    Fraction,
    Unit,
    degree_of,
    homogeneous_components,
    homogeneous_unit_test,
    is_homogeneous,
    reparent,
)
from .errors import (
    BadOrderError,
    GradalError,
    HypothesisViolatedError,
    IncompatibleRingsError,
    NotASectionError,
    NotHomogeneousError,
    NotSimpleBaseError,
    ZeroElementError,
)
from .intmat import solve_int, solve_rational
from .ringexpr import (
    BaseZ,
    BaseQ,
    CoarseGroupAlgebra,
    FineGroupAlgebra,
    NormalForm,
    classify,
    coarsen,
    group_algebra,
    normalize,
    restrict_data,
)

__all__ = [
    "IntegralityWitness",
    "AlmostIntegralWitness",
    "NoWitnessUpTo",
    "RingInclusion",
    "RingMap",
    "inclusion_for",
    "verify_integral_witness",
    "find_integral_equation",
    "find_almost_integral_witness",
    "find_integral_equation_fraction",
    "find_almost_integral_witness_fraction",
    "components_integral_check",
    "ComponentsReport",
    "torsion_idempotent",
    "TorsionIdempotent",
    "LaurentStructure",
    "laurent_extension",
    "graded_euclidean_division",
    "lem50_iso",
    "Lem50Pair",
    "j_pi_embedding",
    "witness_str",
]


@dataclass(frozen=True)
class IntegralityWitness:
    """x^degree + coeffs[0]*x^(degree-1) + ... + coeffs[-1] = 0."""

    degree: int
    coeffs: tuple


@dataclass(frozen=True)
class AlmostIntegralWitness:
    """x^(k+1) = sum(combination[i] * x^i); generators span the module."""

    k: int
    generators: tuple
    combination: tuple


@dataclass(frozen=True)
class NoWitnessUpTo:
    max_deg: int | None = None
    k_max: int | None = None
    box: int | None = None


def witness_str(w):
    parts = [f"monic {w.degree}"]
    for i, a in enumerate(w.coeffs, start=1):
        parts.append(f"a{i} = {a}")
    return "; ".join(parts)


@dataclass(frozen=True)
class RingInclusion:
    """An inclusion of graded rings given on exponents and degrees.

    e_map and g_map are injective and intertwine the degree maps; the
    base pair is Z into Z, Z into Q, or Q into Q.
    """

    src: NormalForm
    dst: NormalForm
    e_map: GroupHom
    g_map: GroupHom

    def cast(self, x):
        if x.parent != self.src:
            raise IncompatibleRingsError("element does not live in the subring")
        return Element(self.dst,
                       {self.e_map.apply(f): c for f, c in x.terms.items()})

    def member(self, x):
        """Pull x back into the subring, or None when it is not inside."""
        if x.parent != self.dst:
            raise IncompatibleRingsError("element does not live in the big ring")
        terms = {}
        for f, c in x.terms.items():
            pre = solve_in_subgroup(self.e_map, f)
            if pre is None:
                return None
            if self.src.base == "Z" and isinstance(c, Rational):
                if c.denominator != 1:
                    return None
                c = int(c)
            terms[pre] = c
        return Element(self.src, terms)


def inclusion_for(r, s, e_map=None, g_map=None):
    """Derive the inclusion r into s, or validate the supplied maps."""
    if (r.base, s.base) not in (("Z", "Z"), ("Z", "Q"), ("Q", "Q")):
        raise IncompatibleRingsError(f"base {r.base} does not embed in {s.base}")
    if r.fraction or s.fraction:
        raise IncompatibleRingsError(
            "witness searches run on the underlying rings, not fraction forms")
    if e_map is None and g_map is None:
        if r.egroup != s.egroup or r.ggroup != s.ggroup or r.delta != s.delta:
            raise IncompatibleRingsError(
                "rings differ beyond the base; pass explicit inclusion maps")
        return RingInclusion(r, s, identity_hom(r.egroup),
                             identity_hom(r.ggroup))
    if e_map is None or g_map is None:
        raise IncompatibleRingsError("pass both inclusion maps or neither")
    if e_map.domain != r.egroup or e_map.codomain != s.egroup:
        raise IncompatibleRingsError("e_map endpoints are wrong")
    if g_map.domain != r.ggroup or g_map.codomain != s.ggroup:
        raise IncompatibleRingsError("g_map endpoints are wrong")
    ke, _ = hom_kernel(e_map)
    kg, _ = hom_kernel(g_map)
    if not ke.is_trivial or not kg.is_trivial:
        raise IncompatibleRingsError("inclusion maps must be injective")
    if not hom_equal(compose(s.delta, e_map), compose(g_map, r.delta)):
        raise IncompatibleRingsError("inclusion does not respect degrees")
    return RingInclusion(r, s, e_map, g_map)


def _sorted_terms(x):
    return sorted(x.terms.items(), key=lambda kv: kv[0].coords)


def _candidate_exponents(r, degree, box):
    """Exponents of the subring with the given degree, inside the box."""
    out = [f for f in r.egroup.box_elements(box)
           if r.delta.apply(f) == degree]
    out.sort(key=lambda f: f.coords)
    return out


def _solve_linear(base, rows, rhs, ncols):
    """Exact solve; integer solutions when the subring base is Z."""
    if base == "Z":
        int_rows = []
        int_rhs = []
        for row, b in zip(rows, rhs):
            scale = lcm(*(v.denominator for v in row + [b])) if row or b else 1
            int_rows.append([int(v * scale) for v in row])
            int_rhs.append(int(b * scale))
        sol = solve_int(int_rows, int_rhs, len(int_rows), ncols)
        return None if sol is None else [Rational(v) for v in sol]
    return solve_rational([list(r) for r in rows], rhs, ncols)


def _monic_solution(incl, factors, n, box, degree):
    """Coefficients a_1..a_n with factors[n] + sum a_i factors[n-i] = 0.

    factors[j] plays the role of x^j; for fractions the caller passes the
    cleared products so the same system serves both shapes.  Variables
    are ordered by (i, exponent), rows by first appearance in canonical
    order, which makes the returned witness deterministic.
    """
    r = incl.src
    variables = []
    columns = []
    row_index = {}
    rows_rhs = []

    def row_of(u):
        if u not in row_index:
            row_index[u] = len(rows_rhs)
            rows_rhs.append(Rational(0))
        return row_index[u]

    for f, c in _sorted_terms(factors[n]):
        rows_rhs[row_of(f)] -= Rational(c)
    for i in range(1, n + 1):
        target = solve_in_subgroup(incl.g_map, i * degree)
        if target is None:
            continue
        for f in _candidate_exponents(r, target, box):
            col = {}
            shift = incl.e_map.apply(f)
            for s, c in _sorted_terms(factors[n - i]):
                idx = row_of(shift + s)
                col[idx] = col.get(idx, Rational(0)) + Rational(c)
            variables.append((i, f))
            columns.append(col)
    nrows = len(rows_rhs)
    mat = [[columns[j].get(ridx, Rational(0)) for j in range(len(columns))]
           for ridx in range(nrows)]
    sol = _solve_linear(r.base, mat, rows_rhs, len(columns))
    if sol is None:
        return None
    coeffs = []
    for i in range(1, n + 1):
        terms = {}
        for (vi, f), val in zip(variables, sol):
            if vi == i and val:
                terms[f] = int(val) if r.base == "Z" else val
        coeffs.append(Element(r, terms))
    return tuple(coeffs)


def verify_integral_witness(r, s, x, w, e_map=None, g_map=None):
    """Exact check of a monic witness: equation, membership, degrees."""
    incl = inclusion_for(r, s, e_map, g_map)
    if not isinstance(w, IntegralityWitness) or w.degree < 1:
        return False
    if len(w.coeffs) != w.degree:
        return False
    for a in w.coeffs:
        if a.parent != r:
            return False
    if not x.is_zero and is_homogeneous(x):
        g = degree_of(x)
        for i, a in enumerate(w.coeffs, start=1):
            if a.is_zero:
                continue
            if not is_homogeneous(a):
                return False
            if incl.g_map.apply(degree_of(a)) != i * g:
                return False
    acc = x ** w.degree
    for i, a in enumerate(w.coeffs, start=1):
        acc = acc + incl.cast(a) * x ** (w.degree - i)
    return acc.is_zero


def find_integral_equation(r, s, x, max_deg=3, support_box=3,
                           e_map=None, g_map=None):
    """Lowest-degree monic witness for x over r, searched within bounds."""
    incl = inclusion_for(r, s, e_map, g_map)
    if x.parent != s:
        raise IncompatibleRingsError("x must live in the big ring")
    if x.is_zero:
        raise ZeroElementError("integrality of zero is trivial; pass nonzero x")
    g = degree_of(x)
    powers = [Element.one(s)]
    for _ in range(max_deg):
        powers.append(powers[-1] * x)
    for n in range(1, max_deg + 1):
        coeffs = _monic_solution(incl, powers, n, support_box, g)
        if coeffs is not None:
            w = IntegralityWitness(n, coeffs)
            if not verify_integral_witness(r, s, x, w, e_map, g_map):
                raise GradalError("witness failed its own verification")
            return w
    return NoWitnessUpTo(max_deg=max_deg, box=support_box)


def find_almost_integral_witness(r, s, x, k_max=2, support_box=3,
                                 e_map=None, g_map=None):
    """Smallest k with x^(k+1) in the r-span of 1, x, ..., x^k.

    The membership system is exactly the monic system at n = k+1 (with
    signs flipped), so this search and find_integral_equation agree at
    aligned bounds: k_max here corresponds to max_deg = k_max + 1 there.
    """
    incl = inclusion_for(r, s, e_map, g_map)
    if x.parent != s:
        raise IncompatibleRingsError("x must live in the big ring")
    if x.is_zero:
        raise ZeroElementError("almost-integrality of zero is trivial")
    g = degree_of(x)
    powers = [Element.one(s)]
    for _ in range(k_max + 1):
        powers.append(powers[-1] * x)
    for k in range(k_max + 1):
        coeffs = _monic_solution(incl, powers, k + 1, support_box, g)
        if coeffs is not None:
            combination = tuple(-coeffs[k - i] for i in range(k + 1))
            acc = Element.zero(s)
            for i, ri in enumerate(combination):
                acc = acc + incl.cast(ri) * powers[i]
            if acc != powers[k + 1]:
                raise GradalError("membership witness failed verification")
            return AlmostIntegralWitness(k, tuple(powers[:k + 1]), combination)
    return NoWitnessUpTo(k_max=k_max, box=support_box)


def _fraction_degree(x):
    num_deg = degree_of(x.num)
    den_deg = degree_of(x.den)
    return num_deg - den_deg


def _fraction_factors(x, n):
    """Cleared products num^j * den^(n-j) standing in for x^j."""
    num_pows = [Element.one(x.parent)]
    den_pows = [Element.one(x.parent)]
    for _ in range(n):
        num_pows.append(num_pows[-1] * x.num)
        den_pows.append(den_pows[-1] * x.den)
    return [num_pows[j] * den_pows[n - j] for j in range(n + 1)]


def find_integral_equation_fraction(r, x, max_deg=3, support_box=3,
                                    e_map=None, g_map=None):
    """Monic witness for a homogeneous fraction x over r.

    The linear system is the cleared-denominator form; the returned
    witness is re-verified with genuine fraction arithmetic, which keeps
    the two routes independent.
    """
    s = x.parent
    incl = inclusion_for(r, s, e_map, g_map)
    if x.is_zero:
        raise ZeroElementError("integrality of zero is trivial")
    g = _fraction_degree(x)
    for n in range(1, max_deg + 1):
        factors = _fraction_factors(x, n)
        coeffs = _monic_solution(incl, factors, n, support_box, g)
        if coeffs is not None:
            w = IntegralityWitness(n, coeffs)
            acc = x ** n
            for i, a in enumerate(coeffs, start=1):
                acc = acc + Fraction.from_element(incl.cast(a)) * x ** (n - i)
            if not acc.is_zero:
                raise GradalError("fraction witness failed verification")
            return w
    return NoWitnessUpTo(max_deg=max_deg, box=support_box)


def find_almost_integral_witness_fraction(r, x, k_max=2, support_box=3,
                                          e_map=None, g_map=None):
    s = x.parent
    incl = inclusion_for(r, s, e_map, g_map)
    if x.is_zero:
        raise ZeroElementError("almost-integrality of zero is trivial")
    g = _fraction_degree(x)
    for k in range(k_max + 1):
        factors = _fraction_factors(x, k + 1)
        coeffs = _monic_solution(incl, factors, k + 1, support_box, g)
        if coeffs is not None:
            combination = tuple(-coeffs[k - i] for i in range(k + 1))
            acc = Fraction.from_element(Element.zero(s))
            for i, ri in enumerate(combination):
                acc = acc + Fraction.from_element(incl.cast(ri)) * x ** i
            if not (acc == x ** (k + 1)):
                raise GradalError("fraction membership failed verification")
            powers = [x ** i for i in range(k + 1)]
            return AlmostIntegralWitness(k, tuple(powers), combination)
    return NoWitnessUpTo(k_max=k_max, box=support_box)


@dataclass(frozen=True)
class ComponentsReport:
    coarse_result: object
    fine_results: tuple
    outcome: str

    @property
    def coarse_found(self):
        return isinstance(self.coarse_result, IntegralityWitness)

    @property
    def fine_found(self):
        return all(isinstance(res, IntegralityWitness)
                   for _, res in self.fine_results)


def components_integral_check(r, psi, x, max_deg=3, support_box=3):
    """Integrality of a coarse-homogeneous x versus its fine components.

    Runs the witness search for x over the coarsened ring and for every
    homogeneous component of x over the fine ring, and reports which
    side produced witnesses: both, only-coarse, only-fine or neither.
    Bounded searches mean only-coarse/only-fine record where a witness
    was found within bounds, not a proof of non-integrality.
    """
    s = x.parent
    inclusion_for(r, s)  # same exponents, base Z in Q or equal
    if x.is_zero:
        raise ZeroElementError("decompose a nonzero element")
    r_c = coarsen(r, psi)
    s_c = coarsen(s, psi)
    x_c = reparent(x, s_c)
    coarse_result = find_integral_equation(r_c, s_c, x_c, max_deg, support_box)
    fine = []
    for deg, part in homogeneous_components(x).items():
        fine.append((deg, find_integral_equation(r, s, part,
                                                 max_deg, support_box)))
    coarse_found = isinstance(coarse_result, IntegralityWitness)
    fine_found = all(isinstance(res, IntegralityWitness) for _, res in fine)
    outcome = {(True, True): "both", (True, False): "only-coarse",
               (False, True): "only-fine", (False, False): "neither"}[
                   (coarse_found, fine_found)]
    return ComponentsReport(coarse_result, tuple(fine), outcome)


@dataclass(frozen=True)
class TorsionIdempotent:
    n: int
    group: FgGroup
    ring_z: NormalForm
    ring_q: NormalForm
    f: Element
    c: Element
    d: Element
    witness: IntegralityWitness


def torsion_idempotent(n):
    """The degree-zero idempotent that breaks integral closedness.

    Over F = Z/n the element f = (1/n) * sum of all e_g is idempotent,
    lies outside the integer-coefficient subring, and satisfies the
    monic equation f^2 + (c-1)f - d = 0 with c = 1 + (n-1)e_g^(n-1) and
    d = n*f, both with integer coefficients.  All identities are checked
    exactly on construction.
    """
    if n < 2:
        raise BadOrderError(f"need n >= 2, got {n}")
    grp = FgGroup(0, (n,))
    ring_z = normalize(CoarseGroupAlgebra(BaseZ(), grp))
    ring_q = normalize(CoarseGroupAlgebra(BaseQ(), grp))
    e = ring_q.egroup
    f = Element(ring_q, {e.element((i,)): Rational(1, n) for i in range(n)})
    ez = ring_z.egroup
    c = Element(ring_z, {ez.zero(): 1, ez.element((n - 1,)): n - 1})
    d = Element(ring_z, {ez.element((i,)): 1 for i in range(n)})
    if f * f != f:
        raise GradalError("idempotent identity failed")
    incl = inclusion_for(ring_z, ring_q)
    if incl.cast(c) * f != incl.cast(d):
        raise GradalError("f*c = d identity failed")
    if incl.member(f) is not None:
        raise GradalError("f unexpectedly has integer coefficients")
    one_z = Element.one(ring_z)
    witness = IntegralityWitness(2, (c - one_z, -d))
    if not verify_integral_witness(ring_z, ring_q, f, witness):
        raise GradalError("monic witness failed verification")
    return TorsionIdempotent(n, grp, ring_z, ring_q, f, c, d, witness)


@dataclass(frozen=True)
class LaurentStructure:
    """A ring together with its Laurent extension by one invisible z.

    ring is base_ring with one adjoined exponent z of degree zero; the
    maps split every exponent of ring into (base exponent, z power).
    """

    ring: NormalForm
    base_ring: NormalForm
    emb_e: GroupHom
    proj_e: GroupHom
    z_proj: GroupHom
    z_gen: GroupElem


def laurent_extension(r):
    if r.fraction:
        raise GradalError("adjoin the Laurent variable before fractions")
    zgrp = FgGroup(1, ())
    ds = direct_sum(r.egroup, zgrp)
    ring = NormalForm(r.base, ds.group, r.ggroup,
                      compose(r.delta, ds.proj1), False)
    if ring != group_algebra(r, zgrp, "coarse"):
        raise GradalError("Laurent extension disagrees with group_algebra")
    z_gen = ds.inj2.apply(zgrp.element((1,)))
    return LaurentStructure(ring, r, ds.inj1, ds.proj1, ds.proj2, z_gen)


def _z_split(struct, x):
    """x as {z exponent: coefficient Element of the base ring}."""
    buckets = {}
    for f, c in x.terms.items():
        k = struct.z_proj.apply(f).coords[0]
        rf = struct.proj_e.apply(f)
        buckets.setdefault(k, {})[rf] = buckets.get(k, {}).get(rf, 0) + c
    return {k: Element(struct.base_ring, t) for k, t in buckets.items()
            if any(t.values())}

def _z_embed(struct, coeff, k):
    shift = k * struct.z_gen
    return Element(struct.ring,
                   {struct.emb_e.apply(f) + shift: c
                    for f, c in coeff.terms.items()})


def graded_euclidean_division(struct, f, g):
    """g = u*f + v with the z-degree of v strictly below that of f.

    Needs a simple base ring so the leading z-coefficient (homogeneous,
    nonzero) is invertible.  Processing always eliminates the maximal z
    power, so the result does not depend on term order.
    """
    if not isinstance(struct, LaurentStructure):
        raise GradalError("pass the Laurent structure, see laurent_extension")
    if not classify(struct.base_ring).simple:
        raise NotSimpleBaseError("division needs a simple base ring")
    if f.parent != struct.ring or g.parent != struct.ring:
        raise IncompatibleRingsError("f and g must live in the Laurent ring")
    if f.is_zero:
        raise ZeroElementError("division by zero")
    if g.is_zero:
        return Element.zero(struct.ring), Element.zero(struct.ring)
    degree_of(f)
    degree_of(g)
    fsplit = _z_split(struct, f)
    fdeg = max(fsplit)
    lead = fsplit[fdeg]
    res = homogeneous_unit_test(lead)
    if not isinstance(res, Unit):
        raise NotSimpleBaseError("leading coefficient is not invertible")
    linv = res.inverse
    u = Element.zero(struct.ring)
    v = g
    while not v.is_zero:
        vsplit = _z_split(struct, v)
        vdeg = max(vsplit)
        if vdeg < fdeg:
            break
        q = _z_embed(struct, vsplit[vdeg] * linv, vdeg - fdeg)
        u = u + q
        v = v - q * f
    return u, v


@dataclass(frozen=True)
class RingMap:
    """Monomial ring morphism: e_f goes to e_(exponent_map(f)).

    Multiplicative and unital by construction; degree behavior is
    whatever the exponent map induces and is asserted by the callers
    that build these maps.
    """

    domain: NormalForm
    codomain: NormalForm
    exponent_map: GroupHom

    def apply(self, x):
        if x.parent != self.domain:
            raise IncompatibleRingsError("element outside the map's domain")
        out = {}
        for f, c in x.terms.items():
            img = self.exponent_map.apply(f)
            out[img] = out.get(img, 0) + c
        return Element(self.codomain, out)

    def __call__(self, x):
        return self.apply(x)


@dataclass(frozen=True)
class Lem50Pair:
    p: RingMap
    q: RingMap
    target: NormalForm
    coarse: NormalForm
    psi: GroupHom
    chi: GroupHom


def lem50_iso(r, f_gens, h_gens):
    """Split a free grading summand F into an adjoined exponent group.

    Given a simple ring r graded by G = F + H with F free and the degree
    support D satisfying psi(D) inside D (psi the projection onto H),
    builds mutually inverse monomial maps between r graded by H and the
    H-restriction of r with D cap F adjoined as extra exponents.  The
    adjoined basis monomials are the canonical preimages y_e of a basis
    of D cap F, which exist and are unique because the degree map of a
    simple ring is injective.
    """
    cls = classify(r)
    if not cls.simple or r.fraction:
        raise HypothesisViolatedError("need a simple ring in algebra form")
    g = r.ggroup
    f_gens = list(f_gens)
    h_gens = list(h_gens)
    sf, i_f = subgroup_generated_by(g, f_gens)
    sh, i_h = subgroup_generated_by(g, h_gens)
    if not sf.is_torsionfree:
        raise HypothesisViolatedError("F must be free")
    ds = direct_sum(sf, sh)
    phi = add_homs(compose(i_f, ds.proj1), compose(i_h, ds.proj2))
    try:
        phi_inv = hom_inverse(phi)
    except GradalError as exc:
        raise HypothesisViolatedError(f"G is not F + H: {exc}") from exc
    chi = compose(ds.proj1, phi_inv)
    psi = compose(ds.proj2, phi_inv)
    rho = compose(i_h, psi)
    d_sub, i_d = hom_image(r.delta)
    for gen in d_sub.generators():
        if solve_in_subgroup(i_d, rho.apply(i_d.apply(gen))) is None:
            raise HypothesisViolatedError(
                "projection onto the complement does not preserve the support")
    # D cap F from the kernel of [i_d | -i_f | relations of G]
    cols = []
    for j in range(d_sub.dim):
        cols.append([i_d.matrix[i][j] for i in range(g.dim)])
    for j in range(sf.dim):
        cols.append([-i_f.matrix[i][j] for i in range(g.dim)])
    rels = g.relation_columns()
    cols.extend(rels)
    stacked = [[cols[j][i] for j in range(len(cols))] for i in range(g.dim)]
    ker = kernel_int(stacked, g.dim, len(cols))
    df_gens = []
    for vec in ker:
        u = d_sub.element(vec[:d_sub.dim])
        df_gens.append(i_d.apply(u))
    df, i_df = subgroup_generated_by(g, df_gens)
    if not df.is_torsionfree:
        raise GradalError("intersection with a free group must be free")
    restricted, kappa = restrict_data(r, h_gens)
    # canonical monomials: the unique exponents over a basis of D cap F
    ycols = []
    for gen in df.generators():
        fe = solve_in_subgroup(r.delta, i_df.apply(gen))
        if fe is None:
            raise GradalError("support basis escaped the degree image")
        ycols.append(list(fe.coords))
    y_map = GroupHom(df, r.egroup,
                     tuple(tuple(ycols[j][i] for j in range(df.dim))
                           for i in range(r.egroup.dim)))
    ds_t = direct_sum(restricted.egroup, df)
    delta_t = compose(restricted.delta, ds_t.proj1)
    target = NormalForm(r.base, ds_t.group, sh, delta_t, False)
    coarse = NormalForm(r.base, r.egroup, sh, compose(psi, r.delta), False)
    mu_p = add_homs(compose(kappa, ds_t.proj1), compose(y_map, ds_t.proj2))
    # q on a generator e_f: split off the F-part chi(delta f) of its
    # degree, divide by its canonical monomial, land in the restriction.
    qcols = []
    for gen in r.egroup.generators():
        gval = r.delta.apply(gen)
        m = solve_in_subgroup(i_df, i_f.apply(chi.apply(gval)))
        if m is None:
            raise GradalError("F-part of a degree escaped the support")
        rest_exp = gen - y_map.apply(m)
        w = solve_in_subgroup(kappa, rest_exp)
        if w is None:
            raise GradalError("residual exponent escaped the restriction")
        img = ds_t.inj1.apply(w) + ds_t.inj2.apply(m)
        qcols.append(list(img.coords))
    mu_q = GroupHom(r.egroup, ds_t.group,
                    tuple(tuple(qcols[j][i] for j in range(r.egroup.dim))
                          for i in range(ds_t.group.dim)))
    if not hom_equal(compose(mu_p, mu_q), identity_hom(r.egroup)):
        raise GradalError("p . q is not the identity on exponents")
    if not hom_equal(compose(mu_q, mu_p), identity_hom(ds_t.group)):
        raise GradalError("q . p is not the identity on exponents")
    if not hom_equal(compose(coarse.delta, mu_p), delta_t):
        raise GradalError("p does not preserve the H-degree")
    p = RingMap(target, coarse, mu_p)
    q = RingMap(coarse, target, mu_q)
    return Lem50Pair(p, q, target, coarse, psi, chi)


def j_pi_embedding(r, psi, pi):
    """Embed the coarsened ring into its kernel algebra along a section.

    psi coarsens the grading, pi is a section of psi.  A fine term of
    degree g is sent to itself times the adjoined exponent g - pi(psi(g)),
    which lies in the kernel of psi for every g; the map is monomial,
    multiplicative and preserves the coarse degree.
    """
    if psi.domain != r.ggroup:
        raise GradalError("psi must start at the grading group")
    if pi.domain != psi.codomain or pi.codomain != psi.domain:
        raise NotASectionError("pi must map the coarse group back")
    if not hom_equal(compose(psi, pi), identity_hom(psi.codomain)):
        raise NotASectionError("psi . pi is not the identity")
    k, i_k = hom_kernel(psi)
    theta_cols = []
    for gen in r.ggroup.generators():
        t = gen - pi.apply(psi.apply(gen))
        pre = solve_in_subgroup(i_k, t)
        if pre is None:
            raise GradalError("g - pi(psi(g)) escaped the kernel")
        theta_cols.append(list(pre.coords))
    theta = GroupHom(r.ggroup, k,
                     tuple(tuple(theta_cols[j][i]
                                 for j in range(r.ggroup.dim))
                           for i in range(k.dim)))
    coarse = coarsen(r, psi)
    ds = direct_sum(r.egroup, k)
    target = group_algebra(coarse, k, "coarse")
    if target.egroup != ds.group:
        raise GradalError("kernel algebra exponents disagree")
    nu = add_homs(ds.inj1, compose(ds.inj2, compose(theta, r.delta)))
    kn, _ = hom_kernel(nu)
    if not kn.is_trivial:
        raise GradalError("embedding is not injective")
    if not hom_equal(compose(target.delta, nu), coarse.delta):
        raise GradalError("embedding does not preserve the coarse degree")
    return RingMap(coarse, target, nu)
