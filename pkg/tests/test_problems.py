import numpy as np
import pytest

from steklov_lab.errors import (
    DimensionMismatch,
    InsufficientData,
    TagMismatch,
)
from steklov_lab.mesh import (
    PerforationSpec,
    boundary_length,
    build_perforated_rectangle,
    build_polar_mesh,
    build_rectangle_grid,
    build_torus_cell,
    region_area,
)
from steklov_lab.problems import (
    ProblemKind,
    nodal_values,
    run_annulus_profile,
    run_beta_sweep,
    run_cell_scaling,
    shape_functionals,
    solve_problem,
    verify_extension_energy,
    verify_lemma31,
)


def test_problem_kind_parse():
    assert ProblemKind.parse("Steklov") is ProblemKind.STEKLOV
    assert ProblemKind.parse("NEUMANN") is ProblemKind.NEUMANN
    with pytest.raises(DimensionMismatch):
        ProblemKind.parse("robin")


def test_dynamical_at_beta_zero_is_steklov():
    mesh = build_rectangle_grid(1.0, 1.0, 16, 16)
    steklov = solve_problem(mesh, ProblemKind.STEKLOV, k=5)
    dyn = solve_problem(mesh, ProblemKind.DYNAMICAL, k=5, beta=0.0)
    assert np.allclose(dyn.eigenvalues, steklov.eigenvalues, rtol=1e-11, atol=1e-12)


def test_problem_validation_errors():
    torus = build_torus_cell(0.25, 8)
    with pytest.raises(TagMismatch):
        solve_problem(torus, ProblemKind.DYNAMICAL, k=2, beta=1.0)
    mesh = build_rectangle_grid(1.0, 1.0, 8, 8)
    with pytest.raises(DimensionMismatch):
        solve_problem(mesh, ProblemKind.DYNAMICAL, k=2, beta=-1.0)


def test_steklov_square_fundamental_sanity():
    # unit square: sigma_1 is a double eigenvalue; 1.3765056 is the h^2
    # Richardson extrapolation of this discretisation at 48/96 per side
    mesh = build_rectangle_grid(1.0, 1.0, 48, 48)
    spec = solve_problem(mesh, ProblemKind.STEKLOV, k=4)
    assert spec.eigenvalues[0] == 0.0
    assert spec.eigenvalues[1] == pytest.approx(spec.eigenvalues[2], rel=1e-3)
    assert spec.eigenvalues[1] == pytest.approx(1.3765056, abs=5e-4)


def test_nodal_values_masks_and_periodicity():
    spec_mesh = build_perforated_rectangle(
        1.0, 1.0, PerforationSpec(epsilon=0.25, beta=1.0, nodes_per_cell_edge=6),
        fill_holes=True,
    )
    spectrum = solve_problem(spec_mesh, ProblemKind.NEUMANN, k=3)
    field = nodal_values(spec_mesh, spectrum, 1)
    assert field.shape == (spec_mesh.n_vertices,)
    assert np.isnan(field).any()  # fill vertices carry no bulk value
    assert np.isfinite(field).sum() > 0

    torus = build_torus_cell(0.2, 8)
    tspec = solve_problem(torus, ProblemKind.NEUMANN, k=3)
    tfield = nodal_values(torus, tspec, 2)
    for slave, master in torus.periodic_pairs:
        assert tfield[slave] == tfield[master]

    with pytest.raises(IndexError):
        nodal_values(torus, tspec, 3)


def test_neumann_square_domain_monotonicity(square_neumann_errors):
    # enlarging the domain can only lower each Neumann eigenvalue; compare
    # the unit square against a 1 x 1.3 rectangle at matched resolution
    _, spectra = square_neumann_errors
    fine = spectra[64]
    rect = solve_problem(
        build_rectangle_grid(1.0, 1.3, 64, 64), ProblemKind.NEUMANN, k=6
    )
    assert (rect.eigenvalues[1:6] <= fine.eigenvalues[1:6] + 1e-9).all()


def test_neumann_square_pair_spread(square_neumann_errors):
    # the exact double eigenvalue pi^2 {1,2}/{2,1} splits only at the
    # discretisation scale on the structured grid
    _, spectra = square_neumann_errors
    lam = spectra[64].eigenvalues
    assert abs(lam[2] - lam[1]) / lam[1] <= 1e-4


def test_weyl_slope_of_square_counting_function():
    # mu_k grows like (4 pi / |D|) k for the unit square; enumerate the
    # exact spectrum pi^2 (m^2 + n^2) and fit the range k = 5..40
    values = sorted(
        np.pi**2 * (m * m + n * n) for m in range(30) for n in range(30)
    )[:41]
    k = np.arange(5, 41)
    slope = np.polyfit(k, np.asarray(values)[5:41], 1)[0]
    assert abs(slope - 4 * np.pi) / (4 * np.pi) < 0.25


def test_shape_functionals_by_kind():
    disk = build_polar_mesh(0.0, 1.0, 24, 96)
    spec = solve_problem(disk, ProblemKind.STEKLOV, k=2)
    fn = shape_functionals(ProblemKind.STEKLOV, spec.eigenvalues, disk)
    # sigma_1 |boundary| = 2 pi for the exact disk
    assert fn[1] == pytest.approx(2.0 * np.pi, rel=5e-3)

    assert shape_functionals("neumann", [2.0], area=0.5)[0] == 1.0
    got = shape_functionals("dynamical", [3.0], perimeter=2.0, area=1.0, beta=1.0)
    assert got[0] == pytest.approx(3.0 * (2.0 + 2.0 * np.pi))
    with pytest.raises(InsufficientData):
        shape_functionals("steklov", [1.0])
    with pytest.raises(InsufficientData):
        shape_functionals("dynamical", [1.0], perimeter=1.0)


def test_beta_sweep_disk_gap_decays():
    report = run_beta_sweep([1.0, 10.0, 100.0], k_max=2)
    assert report.values == pytest.approx([1.0, 10.0, 100.0])
    assert (np.diff(report.gaps[:, 0]) < 0).all()
    assert report.gaps[-1, 0] < 5e-3
    table = report.table()
    assert table.columns[0] == "beta"
    assert len(table.rows) == 3
    assert any(key.startswith("gap_slope") for key in table.meta)


def test_beta_sweep_square_path():
    report = run_beta_sweep([0.5, 2.0], k_max=1, domain="square", resolution=16)
    assert report.eigenvalues.shape == (2, 1)
    assert (report.eigenvalues[:, 0] > 0).all()
    # larger beta pushes the scaled eigenvalue closer to the Neumann value
    assert report.gaps[1, 0] < report.gaps[0, 0]


def test_beta_sweep_validation():
    with pytest.raises(InsufficientData):
        run_beta_sweep([])
    with pytest.raises(DimensionMismatch):
        run_beta_sweep([0.0, 1.0])
    with pytest.raises(DimensionMismatch):
        run_beta_sweep([1.0], domain="triangle")


def test_cell_scaling_report_shape():
    report = run_cell_scaling(
        [1 / 8, 1 / 16, 1 / 32], beta=1.0, nodes_per_cell_edge=8, gate=False
    )
    assert len(report.rows) == 3
    assert report.rows[0].eps == 1 / 8
    assert report.rows[0].h1_norm > report.rows[-1].h1_norm > 0
    assert report.slope.slope == pytest.approx(0.73, abs=0.08)
    table = report.table()
    assert "h1_norm" in table.columns
    assert table.log_x and table.log_y


def test_extension_energy_requires_filled_perforation():
    plain = build_rectangle_grid(1.0, 1.0, 8, 8)
    with pytest.raises(TagMismatch):
        verify_extension_energy(plain)
    unfilled = build_perforated_rectangle(
        1.0, 1.0, PerforationSpec(epsilon=0.25, beta=1.0, nodes_per_cell_edge=6)
    )
    with pytest.raises(TagMismatch):
        verify_extension_energy(unfilled)


def test_extension_energy_report_fields(extension_reports):
    report = extension_reports[0]
    # per-hole entries carry the same normalisation as the aggregate
    assert report.aggregate == pytest.approx(report.per_hole.sum(), rel=1e-12)
    n_side = int(round(1.0 / report.eps)) - 1
    assert report.per_hole.shape == (n_side**2,)
    assert report.bulk_energy > 0
    assert report.eigenvalue > 0


def test_lemma31_grid_summary():
    report = verify_lemma31(
        ells=(1, 2, 3), dims=(2, 3), sigmas=(0.1, 1.0), radii=(1e-2,)
    )
    assert report.n_checked == 12
    assert report.n_skipped == 0
    assert report.n_violations == 0
    assert 0 < report.worst_ratio < report.constant * (1 + report.slack)
    ell, dim, r, sigma = report.worst_combo
    assert (ell, dim) == (1, 2)


def test_lemma31_skips_out_of_regime():
    report = verify_lemma31(ells=(1, 2), dims=(2, 3), sigmas=(100.0,), radii=(1e-2,))
    # sigma r = 1: d = 3 refuses entirely, d = 2 refuses at ell = 1
    assert report.n_skipped == 3
    assert report.n_checked == 1


def test_annulus_profile_report():
    report = run_annulus_profile(lo=0.05, hi=0.5, n_points=30)
    assert len(report.radii) == 30
    assert report.functional.max() <= report.optimum.value + 1e-12
    assert 0.05 < report.optimum.inner_radius < 0.5
    table = report.table()
    assert table.x_column == "inner_radius"
    assert "optimal_inner_radius" in table.meta
