import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steklov_lab.analytic import (
    annulus_first_eigenvalue,
    bessel_j,
    bessel_j_prime,
    dynamical_disk_eigenvalues,
    dynamical_disk_roots,
    mode_energy,
    neumann_disk_eigenvalues,
    normalised_annulus_functional,
    optimise_annulus,
    steklov_annulus_eigenvalues,
    steklov_annulus_mode,
)
from steklov_lab.errors import (
    DegenerateAnnulus,
    DimensionMismatch,
    OutOfRegime,
    OutOfValidatedRange,
)

# independently computed reference values (series summed at 50-digit precision)
BESSEL_TABLE = [
    (0, 0.5, 0.9384698072408129),
    (0, 12.0, 0.047689310796833537),
    (1, 1.0, 0.44005058574493352),
    (2, 3.7, 0.42832965620657587),
    (3, 2.6, 0.23529381304896383),
    (5, 12.0, -0.073470963101658581),
    (7, 19.3, -0.15190770958960595),
    (10, 41.7, 0.036506484374650908),
    (14, 55.5, -0.10866776818299426),
    (20, 3.3, 8.0739106125446895e-15),
    (20, 100.0, 0.062217458498338753),
]

BESSEL_PRIME_TABLE = [
    (0, 0.5, -0.24226845767487389),
    (1, 0.0, 0.5),
    (1, 1.0, 0.32514710081303304),
    (14, 55.5, -0.0054136285733912589),
    (19, 30.0, 0.076822143014390294),
]

J1P_FIRST_ZERO = 1.8411837813406593  # first positive zero of J_1'

NEUMANN_DISK_FIRST_NINE = [
    0.0,
    3.3899577166718889,
    3.3899577166718889,
    9.3283632137463975,
    9.3283632137463975,
    14.681970642123893,
    17.649988519749971,
    17.649988519749971,
    28.276371248725601,
]

# nonzero dynamical-disk eigenvalues: (beta, leading sigmas with multiplicity)
DYNAMICAL_TABLE = {
    0.5: [
        (0.541210650956875, 2),
        (1.27070341884561, 2),
        (2.09747298432983, 2),
        (2.97945091869183, 2),
        (3.09129310299749, 1),
    ],
    1.0: [
        (0.364186256408219, 2),
        (0.908396774442475, 2),
        (1.57205332022697, 2),
        (1.80622062272301, 1),
        (2.31828731501815, 2),
    ],
    5.0: [
        (0.0988257132850984, 2),
        (0.266131546987953, 2),
        (0.439490223631017, 1),
        (0.493731127605021, 2),
        (0.776361749372872, 2),
    ],
}


@pytest.mark.parametrize("ell,x,want", BESSEL_TABLE)
def test_bessel_reference_values(ell, x, want):
    got = bessel_j(ell, x)
    assert got == pytest.approx(want, rel=5e-12, abs=5e-25)


@pytest.mark.parametrize("ell,x,want", BESSEL_PRIME_TABLE)
def test_bessel_prime_reference_values(ell, x, want):
    assert bessel_j_prime(ell, x) == pytest.approx(want, rel=5e-12)


def test_bessel_vectorised_matches_scalar():
    xs = np.array([0.1, 1.0, 7.3, 55.0])
    vec = bessel_j(4, xs)
    assert vec.shape == xs.shape
    for x, v in zip(xs, vec):
        assert v == bessel_j(4, float(x))


@settings(max_examples=60, deadline=None)
@given(
    ell=st.integers(1, 19),
    x=st.floats(0.01, 99.0),
)
def test_bessel_three_term_recurrence(ell, x):
    # J_{l-1}(x) + J_{l+1}(x) = (2 l / x) J_l(x)
    lhs = bessel_j(ell - 1, x) + bessel_j(ell + 1, x)
    rhs = 2.0 * ell / x * bessel_j(ell, x)
    scale = max(abs(lhs), abs(rhs), 1e-30)
    assert abs(lhs - rhs) <= 1e-10 * scale


def test_bessel_refuses_unvalidated_input():
    with pytest.raises(OutOfValidatedRange):
        bessel_j(21, 1.0)
    with pytest.raises(OutOfValidatedRange):
        bessel_j(2, 101.0)
    with pytest.raises(OutOfValidatedRange):
        bessel_j(2, -0.5)
    # the derivative recurrence reads one order higher, so its cap is 19
    with pytest.raises(OutOfValidatedRange):
        bessel_j_prime(20, 1.0)


def test_neumann_disk_reference_spectrum():
    got = neumann_disk_eigenvalues(9)
    assert np.allclose(got, NEUMANN_DISK_FIRST_NINE, rtol=1e-11, atol=1e-12)
    # fundamental is the square of the first J_1' zero
    assert got[1] == pytest.approx(J1P_FIRST_ZERO**2, rel=1e-12)


def test_neumann_disk_radius_scaling():
    unit = neumann_disk_eigenvalues(6, radius=1.0)
    half = neumann_disk_eigenvalues(6, radius=0.5)
    assert np.allclose(half, 4.0 * unit, rtol=1e-11)


@pytest.mark.parametrize("beta", sorted(DYNAMICAL_TABLE))
def test_dynamical_disk_reference_roots(beta):
    want = []
    for sigma, mult in DYNAMICAL_TABLE[beta]:
        want.extend([sigma] * mult)
    got = dynamical_disk_eigenvalues(beta, len(want))
    assert np.allclose(got, want, rtol=1e-11)


@pytest.mark.parametrize("beta", [0.5, 1.0, 5.0])
def test_dynamical_roots_satisfy_secular_equation(beta):
    for root in dynamical_disk_roots(beta, 8):
        k = root.k
        lhs = k * bessel_j_prime(root.ell, k)
        rhs = (k**2 / (2.0 * np.pi * beta)) * bessel_j(root.ell, k)
        assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1e-12)
        assert root.sigma == pytest.approx(k**2 / (2.0 * np.pi * beta), rel=1e-14)
        assert root.multiplicity == (2 if root.ell >= 1 else 1)


def test_dynamical_large_beta_tracks_neumann():
    # 2 pi beta sigma_1(beta) -> mu_1 as beta grows
    mu_1 = NEUMANN_DISK_FIRST_NINE[1]
    gaps = []
    for beta in (10.0, 100.0, 1000.0):
        sigma_1 = dynamical_disk_eigenvalues(beta, 1)[0]
        gaps.append(abs(2.0 * np.pi * beta * sigma_1 - mu_1) / mu_1)
    assert gaps[0] < 0.05
    assert gaps[2] < gaps[1] < gaps[0]


def test_dynamical_small_beta_tracks_steklov():
    # the disk Steklov fundamental is sigma_1 = 1
    sigma_1 = dynamical_disk_eigenvalues(1e-6, 1)[0]
    assert sigma_1 == pytest.approx(0.999998429206, rel=1e-10)
    assert sigma_1 < 1.0


def test_dynamical_eigenvalues_decrease_in_beta():
    values = [dynamical_disk_eigenvalues(beta, 1)[0] for beta in (0.5, 1.0, 5.0)]
    assert values[0] > values[1] > values[2]


@settings(max_examples=40, deadline=None)
@given(
    inner=st.floats(0.05, 0.8),
    ell=st.integers(1, 6),
)
def test_annulus_modes_satisfy_quadratic(inner, ell):
    lo, hi = steklov_annulus_mode(inner, 1.0, ell)
    t = ell * np.log(1.0 / inner)
    coth = np.cosh(t) / np.sinh(t)
    b = ell * (1.0 / inner + 1.0) * coth
    c = ell**2 / inner
    for sig in (lo, hi):
        assert abs(sig * sig - b * sig + c) <= 1e-8 * max(c, sig * sig)
    assert 0.0 < lo < hi


def test_annulus_thin_hole_limit_is_disk():
    # as the hole closes, sigma_1 approaches the disk value ell/R = 1
    values = [annulus_first_eigenvalue(r) for r in (1e-2, 1e-4, 1e-6)]
    assert abs(values[-1] - 1.0) < 1e-3
    assert abs(values[-1] - 1.0) < abs(values[0] - 1.0)


def test_annulus_spectrum_scaling_and_order():
    base = steklov_annulus_eigenvalues(0.3, 1.0, 8)
    scaled = steklov_annulus_eigenvalues(0.15, 0.5, 8)
    assert np.allclose(scaled, 2.0 * base, rtol=1e-10)
    assert base[0] == 0.0
    assert (np.diff(base) >= -1e-12).all()
    with pytest.raises(DegenerateAnnulus):
        steklov_annulus_eigenvalues(1.0, 0.5, 4)
    with pytest.raises(DimensionMismatch):
        steklov_annulus_eigenvalues(0.3, 1.0, 0)


def test_annulus_optimum_location_and_value():
    opt = optimise_annulus()
    assert opt.inner_radius == pytest.approx(0.1467207668227284, abs=2e-6)
    assert opt.value_over_pi == pytest.approx(2.1665350315207013, abs=1e-8)
    assert opt.value == pytest.approx(opt.value_over_pi * np.pi, rel=1e-14)
    # a genuine interior maximum of the normalised functional
    for off in (-0.02, 0.02):
        assert normalised_annulus_functional(opt.inner_radius + off) < opt.value


def test_mode_energy_exact_coefficient():
    m = mode_energy(1, 2, 0.01, 1.0)
    assert m.coefficient == pytest.approx(1.01 / 0.99, rel=1e-14)
    assert m.hole_energy > 0 and m.annulus_energy > 0
    # planar first mode with small hole: ratio stays bounded by a few units
    assert m.ratio < 5.0


def test_mode_energy_ratio_worst_case_on_grid():
    worst = 0.0
    for ell in range(1, 21):
        for dim in (2, 3, 4):
            for sigma in (0.1, 1.0, 10.0):
                for r in (1e-3, 1e-2):
                    try:
                        m = mode_energy(ell, dim, r, sigma)
                    except OutOfRegime:
                        continue
                    worst = max(worst, m.ratio)
    assert worst == pytest.approx(4.938027825477922, rel=1e-9)
    assert worst < 5.0


def test_mode_energy_regime_guards():
    with pytest.raises(OutOfRegime):
        mode_energy(1, 3, 0.1, 5.0)  # sigma * r = 0.5 = (d - 2)/2
    with pytest.raises(OutOfRegime):
        mode_energy(1, 2, 0.1, 0.0)
    with pytest.raises(DimensionMismatch):
        mode_energy(0, 2, 0.1, 1.0)
    with pytest.raises(DegenerateAnnulus):
        mode_energy(1, 2, 1.5, 1.0)


def test_mode_energy_small_hole_coefficient_tends_to_one():
    values = [mode_energy(1, 2, r, 1.0).coefficient for r in (1e-2, 1e-4, 1e-6)]
    assert abs(values[-1] - 1.0) < 1e-5
    assert abs(values[-1] - 1.0) < abs(values[0] - 1.0)
