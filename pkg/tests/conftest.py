"""Shared fixtures: the expensive meshes and sweeps are solved once per
session and reused by the unit and acceptance tests.

Acceptance tests report through ``record_criterion``; a terminal-summary
hook prints one pass/fail line per criterion at the end of the run, even
when pytest captures per-test output.
"""

import numpy as np
import pytest

from steklov_lab import problems
from steklov_lab.mesh import (
    PerforationSpec,
    boundary_length,
    build_perforated_rectangle,
    build_polar_mesh,
)
from steklov_lab.problems import ProblemKind, solve_problem

_CRITERIA: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, passed: bool, detail: str) -> None:
    _CRITERIA[number] = (passed, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, detail = _CRITERIA[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status} — {detail}")


@pytest.fixture(scope="session")
def functional_log():
    """Collected (label, sigma_1 * perimeter) pairs for the global bound
    check; fixtures append as they solve."""
    return []


@pytest.fixture(scope="session")
def disk_mesh():
    return build_polar_mesh(0.0, 1.0, 64, 256)


@pytest.fixture(scope="session")
def disk_steklov(disk_mesh, functional_log):
    spectrum = solve_problem(disk_mesh, ProblemKind.STEKLOV, k=8)
    functional_log.append(
        (
            "steklov disk 64x256",
            float(spectrum.eigenvalues[1]) * boundary_length(disk_mesh, "all"),
        )
    )
    return spectrum


@pytest.fixture(scope="session")
def homog_sweep(functional_log):
    report = problems.run_homogenisation_sweep(
        [1 / 8, 1 / 16, 1 / 32], beta=1.0, k_max=3, keep=True
    )
    for mesh, spectrum, eps in zip(report.meshes, report.spectra, report.values):
        functional_log.append(
            (
                f"perforated square eps={eps:g}",
                float(spectrum.eigenvalues[1]) * boundary_length(mesh, "all"),
            )
        )
    return report


@pytest.fixture(scope="session")
def extension_reports(functional_log):
    reports = []
    for eps in (1 / 8, 1 / 16, 1 / 32):
        spec = PerforationSpec(epsilon=eps, beta=1.0, nodes_per_cell_edge=8)
        mesh = build_perforated_rectangle(1.0, 1.0, spec, fill_holes=True)
        rep = problems.verify_extension_energy(mesh, mode_index=1)
        functional_log.append(
            (
                f"filled perforated square eps={eps:g}",
                rep.eigenvalue * boundary_length(mesh, "all"),
            )
        )
        reports.append(rep)
    return reports


@pytest.fixture(scope="session")
def cell_report():
    return problems.run_cell_scaling([1 / 8, 1 / 16, 1 / 32, 1 / 64], beta=1.0)


@pytest.fixture(scope="session")
def square_neumann_errors():
    """Neumann mu_1 on unit-square grids of step 1/16, 1/32, 1/64."""
    errors = {}
    spectra = {}
    for n in (16, 32, 64):
        from steklov_lab.mesh import build_rectangle_grid

        mesh = build_rectangle_grid(1.0, 1.0, n, n)
        spectrum = solve_problem(mesh, ProblemKind.NEUMANN, k=6)
        spectra[n] = spectrum
        errors[n] = abs(float(spectrum.eigenvalues[1]) - np.pi**2)
    return errors, spectra
