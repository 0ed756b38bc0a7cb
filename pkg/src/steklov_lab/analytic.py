"""Closed-form and semi-analytic spectra on disks and annuli.

Everything here is independent of the finite-element code: Bessel functions
are evaluated from their series and recurrences, roots are isolated by
explicit bracketing arguments and refined by bisection, and the annulus
Steklov spectrum comes from the quadratic satisfied by each angular mode.
These routines provide the reference values the discrete solvers are
measured against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateAnnulus,
    DimensionMismatch,
    OutOfRegime,
    OutOfValidatedRange,
    RootBracketingFailure,
)

_ELL_MAX = 20
_X_MAX = 100.0
_SERIES_CUT = 12.0


def _bessel_j_series(ell: int, x: np.ndarray) -> np.ndarray:
    """Ascending power series, accurate for moderate arguments."""
    half = 0.5 * x
    term = half**ell / math.factorial(ell) if ell else np.ones_like(x)
    total = np.array(term, dtype=np.float64, copy=True)
    z = half * half
    for m in range(1, 80):
        term = term * (-z) / (m * (m + ell))
        total += term
        if np.all(np.abs(term) <= 1e-18 * (np.abs(total) + 1e-300)):
            break
    return total


def _bessel_j_miller(ell: int, x: float) -> float:
    """Downward three-term recurrence with Neumann-series normalisation."""
    k = int(x) + max(ell, 20) + 40
    j_above = 0.0  # J_{k+1}, unnormalised
    j_here = 1e-300  # J_k, unnormalised seed
    j_ell = 0.0
    even_sum = 0.0  # J_2 + J_4 + ...
    while k > 0:
        j_below = (2.0 * k / x) * j_here - j_above
        j_above, j_here = j_here, j_below
        k -= 1
        if k == ell:
            j_ell = j_here
        if k > 0 and k % 2 == 0:
            even_sum += j_here
        if abs(j_here) > 1e250:
            j_above *= 1e-250
            j_here *= 1e-250
            even_sum *= 1e-250
            j_ell *= 1e-250
    # j_here has reached J_0; normalise by J_0 + 2*(J_2 + J_4 + ...) = 1
    return j_ell / (j_here + 2.0 * even_sum)


def bessel_j(ell: int, x) -> np.ndarray | float:
    """Bessel function ``J_ell(x)`` for integer order.

    Validated for ``0 <= ell <= 20`` and ``0 <= x <= 100`` against the
    defining series and the two-sided recurrence; outside that box the
    routine refuses rather than extrapolate.
    """
    if not isinstance(ell, (int, np.integer)) or not 0 <= ell <= _ELL_MAX:
        raise OutOfValidatedRange(
            f"order must be an integer in [0, {_ELL_MAX}], got {ell!r}"
        )
    arr = np.asarray(x, dtype=np.float64)
    if arr.size and (arr.min() < 0.0 or arr.max() > _X_MAX):
        raise OutOfValidatedRange(
            f"argument must lie in [0, {_X_MAX:g}], got range "
            f"[{arr.min():g}, {arr.max():g}]"
        )
    out = np.empty_like(arr)
    small = arr <= _SERIES_CUT
    if small.any():
        out[small] = _bessel_j_series(int(ell), arr[small])
    if (~small).any():
        out[~small] = [_bessel_j_miller(int(ell), float(v)) for v in arr[~small]]
    return out if np.ndim(x) else float(out)


def bessel_j_prime(ell: int, x) -> np.ndarray | float:
    """Derivative ``J_ell'(x)`` via the symmetric recurrence.

    The recurrence reads order ``ell + 1``, so the validated order range is
    one short of the one for ``bessel_j``.
    """
    if not isinstance(ell, (int, np.integer)) or not 0 <= ell <= _ELL_MAX - 1:
        raise OutOfValidatedRange(
            f"derivative order must be an integer in [0, {_ELL_MAX - 1}], "
            f"got {ell!r}"
        )
    if ell == 0:
        result = -np.asarray(bessel_j(1, x))
        return result if np.ndim(x) else float(result)
    lo = np.asarray(bessel_j(ell - 1, x))
    hi = np.asarray(bessel_j(ell + 1, x))
    result = 0.5 * (lo - hi)
    return result if np.ndim(x) else float(result)


def _bisect(f, lo: float, hi: float, f_lo_sign: float, tol: float = 1e-13) -> float:
    """Bisection on a bracket whose left sign may be supplied analytically."""
    f_hi = f(hi)
    if f_lo_sign == 0.0 or f_hi == 0.0:
        return hi if f_hi == 0.0 else lo
    if (f_lo_sign > 0) == (f_hi > 0):
        raise RootBracketingFailure(
            f"no sign change on [{lo:g}, {hi:g}] (signs {f_lo_sign:+g}, "
            f"{np.sign(f_hi):+g})"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol * max(1.0, abs(hi)):
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo_sign > 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _derivative_extrema(ell: int, k_max: float, step: float = 0.02) -> list[float]:
    """Positive zeros of ``J_ell'`` below ``k_max`` (extrema of ``J_ell``)."""
    grid = np.arange(step, k_max + step, step)
    vals = np.asarray(bessel_j_prime(ell, grid))
    roots = []
    for i in range(len(grid) - 1):
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            roots.append(float(grid[i]))
        elif (a > 0) != (b > 0):
            roots.append(
                _bisect(
                    lambda t: bessel_j_prime(ell, t),
                    float(grid[i]),
                    float(grid[i + 1]),
                    np.sign(a),
                )
            )
    return roots


def neumann_disk_eigenvalues(count: int, radius: float = 1.0) -> np.ndarray:
    """First ``count`` Neumann Laplacian eigenvalues of a disk, ascending.

    Starts with the zero mode; each nonzero eigenvalue is
    ``(j'_{ell,m} / radius)**2`` where ``j'_{ell,m}`` is a positive zero of
    ``J_ell'``, counted twice for ``ell >= 1`` (cosine and sine modes).
    """
    if count < 1:
        raise DimensionMismatch(f"need count >= 1, got {count}")
    if radius <= 0:
        raise DegenerateAnnulus(f"radius must be positive, got {radius}")
    k_cap = 4.0
    while True:
        entries = [0.0]
        # the scan per order covers (0, k_cap] completely, and first extrema
        # increase with the order, so entries below (k_cap/radius)^2 are the
        # complete bottom of the spectrum
        ell = 0
        while True:
            if ell >= _ELL_MAX:
                # the next order still reached below k_cap, but its extrema
                # would need derivative orders beyond the validated range
                raise OutOfValidatedRange(
                    f"count {count} needs angular orders beyond the "
                    "validated Bessel box"
                )
            roots = _derivative_extrema(ell, k_cap)
            if not roots:
                break
            mult = 1 if ell == 0 else 2
            entries.extend(
                mu for root in roots for mu in [(root / radius) ** 2] * mult
            )
            ell += 1
        entries.sort()
        if len(entries) >= count and entries[count - 1] < (k_cap / radius) ** 2:
            return np.asarray(entries[:count])
        if k_cap > _X_MAX * 0.9:
            raise OutOfValidatedRange(
                f"count {count} needs Bessel arguments beyond the validated "
                "range"
            )
        k_cap *= 1.6


@dataclass(frozen=True)
class DynamicalDiskRoot:
    """One radial root of the disk problem with boundary-coupled bulk mass.

    ``k`` solves ``k J_ell'(kR) = (k^2 / (2 pi beta)) J_ell(kR)``; the
    eigenvalue is ``sigma = k^2 / (2 pi beta)`` and carries multiplicity 2
    for nonzero angular order.
    """

    ell: int
    index: int
    k: float
    sigma: float
    multiplicity: int
    beta: float
    radius: float


def dynamical_disk_roots(
    beta: float, count: int, radius: float = 1.0
) -> list[DynamicalDiskRoot]:
    """First ``count`` nonzero dynamical-disk roots ordered by ``sigma``.

    For each angular order the roots interlace the extrema of ``J_ell``:
    between consecutive extrema the boundary response is strictly monotone,
    so each interval brackets exactly one root.  The sign of the defining
    function at ``k = 0+`` is analytic (+1 for ``ell >= 1``, -1 for
    ``ell = 0``), which avoids evaluating the degenerate endpoint.  The
    first root per order is increasing in ``ell``, so scanning orders until
    the first root leaves the range enumerates the global bottom of the
    spectrum.
    """
    if beta <= 0:
        raise OutOfRegime(f"beta must be positive, got {beta}")
    if count < 1:
        raise DimensionMismatch(f"need count >= 1, got {count}")
    if radius <= 0:
        raise DegenerateAnnulus(f"radius must be positive, got {radius}")
    two_pi_beta = 2.0 * np.pi * beta

    def g(ell: int, k: float) -> float:
        return k * bessel_j_prime(ell, k * radius) - (k * k / two_pi_beta) * bessel_j(
            ell, k * radius
        )

    k_cap = 4.0 / radius
    while True:
        roots: list[DynamicalDiskRoot] = []
        ell = 0
        while True:
            if ell >= _ELL_MAX:
                raise OutOfValidatedRange(
                    f"count {count} needs angular orders beyond the "
                    "validated Bessel box"
                )
            extrema = [e / radius for e in _derivative_extrema(ell, k_cap * radius)]
            # brackets tile (0, k_cap] so every root below the cap is found;
            # the final partial bracket may legitimately contain none
            brackets = [(0.0, extrema[0] if extrema else k_cap, 1.0 if ell else -1.0)]
            for lo, hi in zip(extrema[:-1], extrema[1:]):
                brackets.append((lo, hi, float(np.sign(g(ell, lo)))))
            if extrema:
                brackets.append((extrema[-1], k_cap, float(np.sign(g(ell, extrema[-1])))))
            found_any = False
            for idx, (lo, hi, sign_lo) in enumerate(brackets, start=1):
                if sign_lo == 0.0 or (np.sign(g(ell, hi)) == np.sign(sign_lo)):
                    continue  # root of this interval lies beyond the cap
                k_root = _bisect(lambda t: g(ell, t), lo, hi, sign_lo)
                roots.append(
                    DynamicalDiskRoot(
                        ell=ell,
                        index=idx,
                        k=k_root,
                        sigma=k_root * k_root / two_pi_beta,
                        multiplicity=1 if ell == 0 else 2,
                        beta=beta,
                        radius=radius,
                    )
                )
                found_any = True
            if not found_any:
                # first roots increase with the order: no higher order can
                # contribute below the cap either
                break
            if ell >= 1 and len(roots) >= count:
                # once this order's first root clears the count-th smallest
                # sigma, every unscanned root (higher order, or beyond the
                # cap) is larger still, so the bottom of the spectrum is
                # already complete
                sigmas = sorted(root.sigma for root in roots)
                first_here = min(
                    root.sigma for root in roots if root.ell == ell
                )
                if first_here > sigmas[count - 1]:
                    break
            ell += 1
        roots.sort(key=lambda root: root.sigma)
        if len(roots) >= count:
            return roots[:count]
        if k_cap * radius > _X_MAX * 0.9:
            raise OutOfValidatedRange(
                f"count {count} needs Bessel arguments beyond the validated "
                "range"
            )
        k_cap *= 1.6


def dynamical_disk_eigenvalues(
    beta: float, count: int, radius: float = 1.0
) -> np.ndarray:
    """First ``count`` nonzero dynamical eigenvalues with multiplicities
    expanded, for comparison against a discrete spectrum."""
    roots = dynamical_disk_roots(beta, count, radius)
    values: list[float] = []
    for root in roots:
        values.extend([root.sigma] * root.multiplicity)
        if len(values) >= count:
            break
    return np.asarray(values[:count])


def steklov_annulus_mode(inner: float, outer: float, ell: int) -> tuple[float, float]:
    """Both Steklov eigenvalues of angular order ``ell >= 1`` on an annulus.

    Each order contributes the two roots of
    ``sigma^2 - sigma * ell * (1/r + 1/R) * coth(ell * log(R/r))
    + ell^2 / (r R) = 0``.
    """
    if not 0.0 < inner < outer:
        raise DegenerateAnnulus(
            f"need 0 < inner < outer, got inner={inner}, outer={outer}"
        )
    if ell < 1:
        raise DimensionMismatch(f"angular order must be >= 1, got {ell}")
    gap = np.log(outer / inner)
    p = ell * (1.0 / inner + 1.0 / outer) / np.tanh(ell * gap)
    q = ell * ell / (inner * outer)
    disc = np.sqrt(p * p - 4.0 * q)
    return (0.5 * (p - disc), 0.5 * (p + disc))


def steklov_annulus_eigenvalues(inner: float, outer: float, count: int) -> np.ndarray:
    """First ``count`` annulus Steklov eigenvalues, ascending, multiplicities
    expanded (order-zero modes are simple, higher orders double)."""
    if count < 1:
        raise DimensionMismatch(f"need count >= 1, got {count}")
    if not 0.0 < inner < outer:
        raise DegenerateAnnulus(
            f"need 0 < inner < outer, got inner={inner}, outer={outer}"
        )
    values = [0.0, (1.0 / inner + 1.0 / outer) / np.log(outer / inner)]
    ell = 1
    while True:
        low, high = steklov_annulus_mode(inner, outer, ell)
        values.extend([low, low, high, high])
        # lower roots increase with the order, so once the order-ell lower
        # root exceeds the current count-th candidate the list is complete
        values.sort()
        if len(values) >= count and low > values[count - 1]:
            return np.asarray(values[:count])
        ell += 1
        if ell > 4 * (count + 2):
            raise RootBracketingFailure(
                "annulus mode enumeration failed to terminate"
            )


def annulus_first_eigenvalue(inner: float, outer: float = 1.0) -> float:
    """Smallest nonzero Steklov eigenvalue of the annulus."""
    return float(steklov_annulus_eigenvalues(inner, outer, 2)[1])


def normalised_annulus_functional(inner: float) -> float:
    """Perimeter-normalised first eigenvalue ``sigma_1 * |boundary|`` of the
    annulus with outer radius 1: ``sigma_1 * 2 pi (1 + inner)``."""
    return annulus_first_eigenvalue(inner) * 2.0 * np.pi * (1.0 + inner)


@dataclass(frozen=True)
class AnnulusOptimum:
    """Maximiser of the perimeter-normalised first annulus eigenvalue."""

    inner_radius: float
    value: float
    value_over_pi: float
    sigma_1: float


def optimise_annulus(
    lo: float = 0.01, hi: float = 0.9, grid: int = 200, refine_iters: int = 80
) -> AnnulusOptimum:
    """Locate the inner radius maximising the normalised functional.

    A coarse grid isolates the peak, then golden-section refinement narrows
    it; the functional is smooth and single-peaked on the searched range.
    """
    if not 0.0 < lo < hi < 1.0:
        raise DegenerateAnnulus(f"need 0 < lo < hi < 1, got ({lo}, {hi})")
    radii = np.linspace(lo, hi, grid)
    vals = np.array([normalised_annulus_functional(r) for r in radii])
    best = int(np.argmax(vals))
    a = radii[max(best - 1, 0)]
    b = radii[min(best + 1, grid - 1)]
    phi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1 = normalised_annulus_functional(x1)
    f2 = normalised_annulus_functional(x2)
    for _ in range(refine_iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = normalised_annulus_functional(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = normalised_annulus_functional(x1)
    r_star = 0.5 * (a + b)
    value = normalised_annulus_functional(r_star)
    return AnnulusOptimum(
        inner_radius=r_star,
        value=value,
        value_over_pi=value / np.pi,
        sigma_1=annulus_first_eigenvalue(r_star),
    )


@dataclass(frozen=True)
class ModeEnergy:
    """Energies of one annular test mode on ``A_{r,1}`` in dimension ``d``.

    The mode is harmonic in the annulus with Steklov-type flux ``sigma`` on
    the inner sphere; ``hole_energy`` is the Dirichlet energy of its
    harmonic extension into the hole and ``annulus_energy`` the mode's own
    energy including the inner boundary term.
    """

    ell: int
    dim: int
    r: float
    sigma: float
    coefficient: float
    hole_energy: float
    annulus_energy: float

    @property
    def ratio(self) -> float:
        """Hole-to-bulk energy ratio normalised by the hole volume scale."""
        return self.hole_energy / (self.r**self.dim * self.annulus_energy)


def mode_energy(ell: int, dim: int, r: float, sigma: float) -> ModeEnergy:
    """Exact energies of the order-``ell`` annular test mode.

    The radial profile ``a(s) = s^ell + M r^(2 ell + d - 2) s^-(ell + d - 2)``
    satisfies the inner flux condition when
    ``M = (ell + sigma r) / (ell + d - 2 - sigma r)``; the combination is
    out of regime when the denominator is not positive.
    """
    if ell < 1:
        raise DimensionMismatch(f"angular order must be >= 1, got {ell}")
    if dim < 2:
        raise DimensionMismatch(f"dimension must be >= 2, got {dim}")
    if not 0.0 < r < 1.0:
        raise DegenerateAnnulus(f"inner radius must lie in (0, 1), got {r}")
    if sigma <= 0.0:
        raise OutOfRegime(f"flux parameter must be positive, got {sigma}")
    if dim > 2 and sigma * r >= 0.5 * (dim - 2):
        raise OutOfRegime(
            f"sigma * r = {sigma * r:g} is not below (d - 2)/2 = "
            f"{0.5 * (dim - 2):g}; the coefficient ratio is unbounded there"
        )
    denom = ell + dim - 2 - sigma * r
    if denom <= 0.0:
        raise OutOfRegime(
            f"sigma * r = {sigma * r:g} reaches ell + d - 2 = {ell + dim - 2}; "
            "the inner flux condition has no admissible profile"
        )
    coeff = (ell + sigma * r) / denom
    decay = r ** (2 * ell + dim - 2)
    a_r = r**ell * (1.0 + coeff)
    a_1 = 1.0 + coeff * decay
    da_1 = ell - (ell + dim - 2) * coeff * decay
    hole = ell * a_r**2 * r ** (dim - 2)
    bulk = sigma * a_r**2 * r ** (dim - 1) + a_1 * da_1
    if bulk <= 0.0:
        raise OutOfRegime(
            f"annulus energy {bulk:g} is not positive for ell={ell}, d={dim}, "
            f"r={r:g}, sigma={sigma:g}"
        )
    return ModeEnergy(
        ell=ell,
        dim=dim,
        r=r,
        sigma=sigma,
        coefficient=coeff,
        hole_energy=hole,
        annulus_energy=bulk,
    )
