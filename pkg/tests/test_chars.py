"""Character-layer tests: denominators, characters, formal degrees, Omega.

Frozen expected values were computed with the independent summation oracles
in this file (exact cyclotomic bookkeeping for rational angles, permutation
sums over explicit Weyl matrices, finite differences for the singular
limit), not with the module under test.
"""

import cmath
import math
import random
from fractions import Fraction

import pytest

from ranklef.chars import (
    Chamber,
    HCParameter,
    NoncompactCartanElement,
    SingularElementError,
    TorusElement,
    c_sign,
    central_character,
    character_exp,
    ds_character_Treg,
    elliptic_orbital_term,
    formal_degree,
    hc_parameter,
    omega,
    weyl_denominator_T,
)
from ranklef.rootsys import (
    GroupDescriptor,
    Regularity,
    RootKind,
    Weight,
    WeightClass,
    build_root_system,
    inner,
    weyl_group,
)

SL2 = build_root_system(GroupDescriptor.from_name("sl2r"))
SU21 = build_root_system(GroupDescriptor.from_name("su(2,1)"))


def _param(rs, coords) -> HCParameter:
    # direct construction; regularity is not consulted by the evaluators
    return HCParameter(Weight(tuple(Fraction(c) for c in coords)), WeightClass(Regularity.REGULAR))


LAM11 = _param(SL2, (Fraction(11, 2), Fraction(-11, 2)))
LAM1 = _param(SL2, (Fraction(1, 2), Fraction(-1, 2)))


# ---------------------------------------------------------------------------
# Weyl denominator


def test_denominator_sl2_quarter_angle():
    t = TorusElement.sl2(Fraction(1, 4))
    val = weyl_denominator_T(SL2, t)
    assert abs(val - 2j * math.sin(math.pi / 4)) < 1e-14


def test_denominator_identity_is_zero():
    for rs in (SL2, SU21):
        t = TorusElement(tuple(Fraction(0) for _ in range(rs.dim)))
        assert weyl_denominator_T(rs, t) == 0


def test_denominator_matches_eigenvalue_product():
    # |Delta_T|^2 equals prod over all roots of (1 - e^beta), the determinant
    # of (Id - Ad) on g/t computed from the adjoint eigenvalues.
    random.seed(3)
    for _ in range(20):
        q = tuple(Fraction(random.randint(-10, 10), 21) for _ in range(3))
        t = TorusElement(q)
        delta = weyl_denominator_T(SU21, t)
        prod = 1.0 + 0.0j
        for r in SU21.roots:
            prod *= 1 - character_exp(r, t)
        assert abs(abs(delta) ** 2 - prod.real) < 1e-9
        assert abs(prod.imag) < 1e-9


# ---------------------------------------------------------------------------
# discrete series character on T^reg


def _exact_numerator(rs, lam, t):
    """Independent cyclotomic recomputation: exact exponent bookkeeping."""
    terms = []
    for w in weyl_group(rs, "compact"):
        x = sum(c * a for c, a in zip(w.apply(lam).coords, t.angles))
        terms.append((w.sign, x - (x.numerator // x.denominator)))
    return sum(s * cmath.exp(2j * math.pi * float(x)) for s, x in terms)


def test_character_sl2_frozen_values():
    t = TorusElement.sl2(Fraction(1, 4))
    # e^{11a/2}(t) / (e^{a/2} - e^{-a/2})(t) = e^{11 i pi/4} / (2 i sin(pi/4))
    got = ds_character_Treg(SL2, LAM11, t)
    assert got.is_regular_point
    assert abs(got.value - (0.5 + 0.5j)) < 1e-12
    got1 = ds_character_Treg(SL2, LAM1, t)
    assert abs(got1.value - (0.5 - 0.5j)) < 1e-12


def test_character_su21_against_permutation_oracle():
    lam = _param(SU21, (2, 0, -2))
    t = TorusElement((Fraction(1, 7), Fraction(2, 7), Fraction(-3, 7)))
    num = _exact_numerator(SU21, lam.lam, t)
    den = weyl_denominator_T(SU21, t)
    got = ds_character_Treg(SU21, lam, t)
    assert abs(got.value - num / den) < 1e-12


def test_character_rejects_singular_element():
    t = TorusElement((Fraction(0), Fraction(0)))
    with pytest.raises(SingularElementError):
        ds_character_Treg(SL2, LAM11, t)


def test_numerator_antisymmetry():
    # N(u lam) = det(u) N(lam) for u in W_k, exact for rational angles
    random.seed(11)
    group = weyl_group(SU21, "compact")
    for _ in range(10):
        lam = Weight(tuple(Fraction(random.randint(-8, 8)) for _ in range(3)))
        q = tuple(Fraction(random.randint(-10, 10), 24) for _ in range(3))
        t = TorusElement(q)
        base = _exact_numerator(SU21, lam, t)
        for u in group:
            moved = _exact_numerator(SU21, u.apply(lam), t)
            assert abs(moved - u.sign * base) < 1e-9


def test_character_cyclotomic_recomputation():
    random.seed(5)
    for _ in range(25):
        den = random.choice([5, 7, 8, 12, 24])
        q = tuple(Fraction(random.randint(-den, den), den) for _ in range(3))
        t = TorusElement(q)
        if abs(weyl_denominator_T(SU21, t)) < 1e-9:
            continue
        lam = _param(SU21, (3, 1, -4))
        got = ds_character_Treg(SU21, lam, t).value
        ref = _exact_numerator(SU21, lam.lam, t) / weyl_denominator_T(SU21, t)
        assert abs(got - ref) < 1e-12


# ---------------------------------------------------------------------------
# elliptic orbital values


def _random_regular_lambda(rs, rng):
    dim = rs.dim
    while True:
        if rs.descriptor.family.value == "su":
            vals = rng.sample(range(-9, 10), dim)
            vals.sort(reverse=True)
            coords = [Fraction(v) for v in vals]
        else:
            vals = rng.sample(range(1, 12), dim)
            vals.sort(reverse=True)
            coords = [Fraction(v) for v in vals]
        lam = Weight(tuple(coords))
        pairings = [inner(rs, lam, Weight(r.coords)) for r in rs.positive_roots()]
        if all(p > 0 for p in pairings):
            return HCParameter(lam, WeightClass(Regularity.REGULAR))


def _random_regular_torus(rs, rng):
    while True:
        den = rng.choice([7, 11, 13, 24])
        q = tuple(Fraction(rng.randint(-den, den), den) for _ in range(rs.dim))
        t = TorusElement(q)
        if abs(weyl_denominator_T(rs, t)) > 1e-6:
            return t


@pytest.mark.parametrize("name", ["su(1,1)", "su(2,1)", "so(4,1)", "sp(1,1)"])
def test_elliptic_orbital_consistency_regular(name):
    rs = build_root_system(GroupDescriptor.from_name(name))
    rng = random.Random(abs(hash(name)) % 100000)
    sign = (-1) ** (rs.dim_p // 2)
    for _ in range(20):
        lam = _random_regular_lambda(rs, rng)
        t = _random_regular_torus(rs, rng)
        lhs = elliptic_orbital_term(rs, lam, t)
        rhs = sign * ds_character_Treg(rs, lam, t).value
        assert abs(lhs - rhs) < 1e-9


def test_elliptic_orbital_sl2_frozen_value():
    # (-1)^{dim p/2} Theta at the quarter-angle element; frozen from the
    # character value (1+i)/2 computed above.
    t = TorusElement.sl2(Fraction(1, 4))
    got = elliptic_orbital_term(SL2, LAM11, t)
    assert abs(got - (-0.5 - 0.5j)) < 1e-12


def test_elliptic_orbital_singular_limit_oracle():
    # Singular xi in su(2,1) with R+(xi) = {e1 - e2}: the implementation must
    # match the finite-difference limit of the numerator derivative divided
    # by the surviving denominator factors (Harish-Chandra limit shape).
    xi = TorusElement((Fraction(1, 5), Fraction(1, 5), Fraction(-2, 5)))
    lam = _param(SU21, (3, 1, -4))
    direction = (1.0, -1.0, 0.0)  # coroot direction of e1 - e2

    def full_numerator(eps):
        total = 0.0 + 0.0j
        for w in weyl_group(SU21, "compact"):
            wl = w.apply(lam.lam)
            x = float(sum(float(c) * float(a) for c, a in zip(wl.coords, xi.angles)))
            x += eps * sum(float(c) * d for c, d in zip(wl.coords, direction))
            total += w.sign * cmath.exp(2j * math.pi * x)
        return total

    def derivative(eps):
        return (full_numerator(eps) - full_numerator(-eps)) / (2 * eps)

    d = (4 * derivative(1e-5) - derivative(2e-5)) / 3  # Richardson
    d /= 2j * math.pi
    den = character_exp(SU21.rho_g, xi)
    for r in SU21.positive_roots():
        if r.coords == (Fraction(1), Fraction(-1), Fraction(0)):
            continue
        den *= 1 - 1 / character_exp(r, xi)
    # full W_k sum double counts the W_{k_xi} cosets (order 2 subgroup)
    oracle = d / (2 * den)
    got = elliptic_orbital_term(SU21, lam, xi)
    assert abs(got - oracle) < 1e-7


def test_elliptic_orbital_coset_invariance():
    # the summand is invariant under replacing coset reps; compare against a
    # full-group sum divided by the subgroup order
    xi = TorusElement((Fraction(1, 5), Fraction(1, 5), Fraction(-2, 5)))
    lam = _param(SU21, (3, 1, -4))
    full = 0.0 + 0.0j
    a1 = Weight((Fraction(1), Fraction(-1), Fraction(0)))
    den = character_exp(SU21.rho_g, xi)
    for r in SU21.positive_roots():
        if r.coords == a1.coords:
            continue
        den *= 1 - 1 / character_exp(r, xi)
    for w in weyl_group(SU21, "compact"):
        wl = w.apply(lam.lam)
        full += w.sign * float(inner(SU21, wl, a1)) * character_exp(wl, xi)
    assert abs(elliptic_orbital_term(SU21, lam, xi) - full / (2 * den)) < 1e-12


# ---------------------------------------------------------------------------
# formal degree


def test_formal_degree_sl2_values():
    assert abs(formal_degree(SL2, LAM11) - 11 / (2 * math.pi)) < 1e-14
    assert abs(formal_degree(SL2, LAM1) - 1 / (2 * math.pi)) < 1e-14


def test_formal_degree_positive_and_monotone():
    prev = 0.0
    for k in range(4, 40, 2):
        lam = _param(SL2, (Fraction(k - 1, 2), Fraction(-(k - 1), 2)))
        val = formal_degree(SL2, lam)
        assert val > prev
        prev = val


def test_formal_degree_su21_positive():
    lam = _param(SU21, (2, 0, -2))
    assert formal_degree(SU21, lam) > 0


def test_formal_degree_rejects_singular():
    rs = SL2
    lam = HCParameter(
        Weight((Fraction(0), Fraction(0))),
        WeightClass(Regularity.SINGULAR, rs.positive_roots()[0]),
    )
    with pytest.raises(ValueError):
        formal_degree(rs, lam)


# ---------------------------------------------------------------------------
# sign function and Omega


def test_c_sign_cases():
    mu_pos = Weight((Fraction(3), Fraction(-3)))  # positive beta0 pairing
    mu_zero = Weight((Fraction(0), Fraction(0)))
    assert c_sign(SL2, mu_pos, Chamber.H_PLUS) == -1
    assert c_sign(SL2, mu_zero, Chamber.H_PLUS) == 0
    for mu in (mu_pos, mu_zero, Weight((Fraction(-2), Fraction(2)))):
        assert c_sign(SL2, mu, Chamber.H_MINUS) == -c_sign(SL2, mu, Chamber.H_PLUS)


def _identity_h(rs):
    return NoncompactCartanElement.from_log_a(tuple(Fraction(0) for _ in range(rs.dim)), 0.0)


def test_omega_identity_vanishing_dichotomy():
    for name, vanishes in [
        ("su(3,1)", True),
        ("sp(1,1)", True),
        ("so(4,1)", True),
        ("su(2,1)", False),
        ("sl2r", False),
    ]:
        rs = build_root_system(GroupDescriptor.from_name(name))
        lam = HCParameter(rs.rho_g, WeightClass(Regularity.REGULAR))
        val = omega(rs, lam, _identity_h(rs))
        if vanishes:
            assert abs(val) < 1e-12, name
        else:
            assert abs(val) > 0.5, name


def test_omega_sl2_two_term_value_and_antisymmetry():
    # lambda dominant: both W_g terms select the same decaying exponential
    # with c-signs -1, so Omega(e) = -1; flipping lambda flips the sign.
    h = _identity_h(SL2)
    assert abs(omega(SL2, LAM11, h) - (-1.0)) < 1e-14
    lam_neg = _param(SL2, (Fraction(-11, 2), Fraction(11, 2)))
    assert abs(omega(SL2, lam_neg, h) - 1.0) < 1e-14
    t = 0.37
    hp = NoncompactCartanElement.from_log_a(h.compact_angles, t)
    assert abs(omega(SL2, LAM11, hp) + omega(SL2, lam_neg, hp)) < 1e-14


def test_omega_chamber_mirror_oddness():
    random.seed(23)
    for name in ("sl2r", "su(2,1)", "sp(1,1)"):
        rs = build_root_system(GroupDescriptor.from_name(name))
        lam = HCParameter(rs.rho_g + rs.rho_g, WeightClass(Regularity.REGULAR))
        for _ in range(10):
            ang = tuple(Fraction(random.randint(-6, 6), 12) for _ in range(rs.dim))
            t = random.uniform(0.05, 3.0)
            plus = NoncompactCartanElement.from_log_a(ang, t)
            minus = NoncompactCartanElement.from_log_a(ang, -t)
            assert abs(omega(rs, lam, minus) + omega(rs, lam, plus)) < 1e-9


def test_omega_one_sided_limit_at_identity_split():
    h0 = _identity_h(SL2)
    limit = omega(SL2, LAM11, NoncompactCartanElement.from_log_a(h0.compact_angles, 1e-9))
    assert abs(omega(SL2, LAM11, h0) - limit) < 1e-6


def test_omega_central_compact_part_parity():
    # compact part -I multiplies Omega by the central character (+1 for the
    # even-weight dictionary, -1 for odd)
    minus_angles = (Fraction(1, 2), Fraction(-1, 2))
    h = NoncompactCartanElement.from_log_a(minus_angles, 0.8)
    h0 = NoncompactCartanElement.from_log_a((Fraction(0), Fraction(0)), 0.8)
    assert abs(omega(SL2, LAM11, h) - omega(SL2, LAM11, h0)) < 1e-14  # k = 12
    lam_odd = _param(SL2, (5, -5))  # k = 11
    assert abs(omega(SL2, lam_odd, h) + omega(SL2, lam_odd, h0)) < 1e-14


# ---------------------------------------------------------------------------
# central character


def test_central_character_identity():
    z = TorusElement((Fraction(0), Fraction(0)))
    assert abs(central_character(SL2, LAM11, z) - 1.0) < 1e-15


def test_central_character_minus_identity_parity():
    z = TorusElement((Fraction(1, 2), Fraction(-1, 2)))
    for k in (4, 8, 12, 20):
        lam = _param(SL2, (Fraction(k - 1, 2), Fraction(-(k - 1), 2)))
        assert abs(central_character(SL2, lam, z) - 1.0) < 1e-12
    for k in (5, 11):
        lam = _param(SL2, (Fraction(k - 1, 2), Fraction(-(k - 1), 2)))
        assert abs(central_character(SL2, lam, z) + 1.0) < 1e-12


def test_central_character_unitary_inverse():
    z = TorusElement((Fraction(1, 2), Fraction(-1, 2)))
    zinv = TorusElement((Fraction(-1, 2), Fraction(1, 2)))
    val = central_character(SL2, LAM11, z) * central_character(SL2, LAM11, zinv)
    assert abs(val - 1.0) < 1e-12


def test_central_character_rejects_noncentral():
    z = TorusElement((Fraction(1, 3), Fraction(-1, 3)))
    with pytest.raises(ValueError):
        central_character(SL2, LAM11, z)


def test_hc_parameter_wrapper():
    mu = Weight((Fraction(11, 2), Fraction(-11, 2)))
    lam = hc_parameter(SL2, mu)
    assert lam.lam == mu  # rho_k = 0 here
    assert lam.regularity.regularity is Regularity.REGULAR
