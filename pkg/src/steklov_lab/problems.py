"""Eigenvalue problems on meshes and the experiment drivers built on them.

Three problem kinds share one stiffness matrix and differ in the mass-like
operator: Steklov weighs the whole boundary, Neumann the bulk, and the
boundary-coupled ("dynamical") problem mixes bulk mass scaled by
``2 pi beta`` with outer-boundary mass.  The drivers reproduce the
homogenisation experiments: perforated Steklov spectra against the
boundary-coupled reference, the large-beta limit toward Neumann, cell-problem
norm scaling, hole-extension energy control, and the annular test-mode
inequality sweep.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import analytic, fem
from ._fit import SlopeFit, fit_slope
from .eigen import Spectrum, cluster_indices, solve_pencil
from .errors import (
    DimensionMismatch,
    InsufficientData,
    TagMismatch,
)
from .mesh import (
    Mesh,
    PerforationSpec,
    boundary_length,
    build_perforated_rectangle,
    build_torus_cell,
    dof_map,
    mesh_checksum,
    region_area,
    region_mask,
)


class ProblemKind(enum.Enum):
    STEKLOV = "steklov"
    NEUMANN = "neumann"
    DYNAMICAL = "dynamical"

    @classmethod
    def parse(cls, name: str) -> "ProblemKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise DimensionMismatch(
                f"unknown problem kind {name!r}; expected one of "
                f"{[k.value for k in cls]}"
            ) from None


def _active_dofs(mesh: Mesh) -> np.ndarray:
    """Dofs carried by bulk-region triangles, in ascending order.

    Restricting the pencil to these keeps hole-fill vertices out of the
    spectral problem, so a filled mesh solves the same problem as the
    perforated one."""
    dmap, _ = dof_map(mesh)
    return np.unique(dmap[mesh.triangles[region_mask(mesh, "matrix")]])


def solve_problem(
    mesh: Mesh,
    kind: ProblemKind | str,
    k: int = 6,
    beta: float = 0.0,
    *,
    seed: int = 0,
) -> Spectrum:
    """Solve the selected eigenvalue problem on the bulk region of a mesh.

    Steklov weighs every tagged boundary edge, Neumann the bulk mass, and
    the boundary-coupled problem uses ``2 pi beta * bulk mass + outer
    boundary mass`` (so ``beta = 0`` degenerates to Steklov on the outer
    boundary alone).  The pencil is restricted to dofs of bulk triangles.
    """
    kind = ProblemKind.parse(kind) if isinstance(kind, str) else kind
    stiffness = fem.assemble_stiffness(mesh, region="matrix")
    if kind is ProblemKind.STEKLOV:
        if len(mesh.boundary_edges) == 0:
            raise TagMismatch("Steklov problem needs a tagged boundary")
        weight = fem.assemble_boundary_mass(mesh, tags="all")
    elif kind is ProblemKind.NEUMANN:
        weight = fem.assemble_mass(mesh, region="matrix")
    else:
        if not (mesh.boundary_tags == -1).any():
            raise TagMismatch(
                "boundary-coupled problem needs outer-tagged edges; this "
                "mesh has none"
            )
        if beta < 0:
            raise DimensionMismatch(f"beta must be nonnegative, got {beta}")
        weight_csr = fem.assemble_boundary_mass(mesh, tags="outer").csr
        if beta > 0:
            bulk = fem.assemble_mass(mesh, region="matrix").csr
            weight_csr = (weight_csr + (2.0 * np.pi * beta) * bulk).tocsr()
        weight = fem.SymmetricSparseMatrix(weight_csr)
    active = _active_dofs(mesh)
    k_sub = stiffness.restricted(active)
    c_sub = weight.restricted(active)
    return solve_pencil(k_sub, c_sub, k, seed=seed)


def nodal_values(mesh: Mesh, spectrum: Spectrum, index: int) -> np.ndarray:
    """Expand a restricted eigenvector to one value per mesh vertex.

    Vertices outside the bulk region (hole-fill interiors) receive NaN;
    periodic slave vertices receive their master's value.
    """
    dmap, n_dofs = dof_map(mesh)
    active = _active_dofs(mesh)
    if spectrum.eigenvectors.shape[0] != len(active):
        raise DimensionMismatch(
            "spectrum does not match this mesh's bulk dof count"
        )
    on_dofs = np.full(n_dofs, np.nan)
    on_dofs[active] = spectrum.eigenvectors[:, index]
    return on_dofs[dmap]


@dataclass
class TableReport:
    """Column-oriented result table with plotting hints for the emitters."""

    title: str
    columns: list[str]
    rows: list[tuple]
    meta: dict = field(default_factory=dict)
    x_column: str | None = None
    y_columns: tuple = ()
    log_x: bool = False
    log_y: bool = False


def _mesh_meta(mesh: Mesh) -> dict:
    meta = {
        "checksum": mesh_checksum(mesh),
        "n_vertices": mesh.n_vertices,
        "n_triangles": mesh.n_triangles,
        "bulk_area": region_area(mesh, "matrix"),
        "outer_perimeter": boundary_length(mesh, "outer"),
        "hole_perimeter": boundary_length(mesh, "holes"),
    }
    if mesh.hole_centers is not None:
        meta["n_holes"] = len(mesh.hole_centers)
    if mesh.perforation is not None:
        meta["hole_radius"] = mesh.perforation.radius
    return meta


@dataclass
class SweepReport:
    """Eigenvalues along a one-parameter family with reference comparisons.

    ``eigenvalues[i, k]`` is the (k+1)-th nonzero eigenvalue at parameter
    value ``values[i]`` after cluster summation, ``references`` the matching
    reference quantities, ``gaps`` the relative deviations, ``functionals``
    the perimeter-normalised products, and ``slopes`` per-k log-log fits of
    gap against parameter (when the fit is possible).
    """

    parameter: str
    values: np.ndarray
    eigenvalues: np.ndarray
    references: np.ndarray
    gaps: np.ndarray
    functionals: np.ndarray
    slopes: list[SlopeFit | None]
    mesh_meta: list[dict]
    extra: dict = field(default_factory=dict)
    meshes: list[Mesh] | None = None
    spectra: list[Spectrum] | None = None

    @property
    def k_max(self) -> int:
        return self.eigenvalues.shape[1]

    def table(self) -> TableReport:
        k_max = self.k_max
        scaled = self.parameter == "beta"
        ks = range(1, k_max + 1)
        columns = [self.parameter]
        columns += [f"sigma_{k}" for k in ks]
        if scaled:
            columns += [f"two_pi_beta_sigma_{k}" for k in ks]
        columns += [f"mu_ref_{k}" if scaled else f"ref_{k}" for k in ks]
        columns += [f"rel_gap_{k}" for k in ks]
        columns += [f"functional_{k}" for k in ks]
        rows = []
        ref = np.broadcast_to(self.references, self.eigenvalues.shape)
        for i, v in enumerate(self.values):
            row = (float(v),) + tuple(self.eigenvalues[i])
            if scaled:
                row += tuple(2.0 * np.pi * v * self.eigenvalues[i])
            rows.append(
                row + tuple(ref[i]) + tuple(self.gaps[i]) + tuple(self.functionals[i])
            )
        meta = dict(self.extra)
        for j, s in enumerate(self.slopes, start=1):
            if s is not None:
                meta[f"gap_slope_{j}"] = f"{s.slope:.6g} (r2 {s.r_squared:.4g})"
        for i, mm in enumerate(self.mesh_meta):
            for key, val in mm.items():
                meta[f"mesh_{i}_{key}"] = val
        return TableReport(
            title=f"{self.parameter} sweep",
            columns=columns,
            rows=rows,
            meta=meta,
            x_column=self.parameter,
            y_columns=tuple(f"rel_gap_{k}" for k in range(1, k_max + 1)),
            log_x=True,
            log_y=True,
        )


def _cluster_slices(ref_lam: np.ndarray, k_max: int, rtol: float = 1e-2):
    """Index ranges of the first ``k_max`` nonzero clusters of a reference.

    A multiplicity split by discretisation can exceed any tolerance a
    perturbed spectrum would satisfy, so cross-spectrum comparisons fix the
    cluster structure once — on the reference — and sum the same index
    ranges on both sides.  Accidentally close but distinct eigenvalues get
    merged into one cluster, which only makes the comparison coarser, never
    misaligned.
    """
    groups = cluster_indices(ref_lam, rtol)
    if len(groups) < k_max + 1:
        raise InsufficientData(
            f"reference spectrum of length {len(ref_lam)} resolves only "
            f"{len(groups) - 1} nonzero clusters; need {k_max}"
        )
    return [slice(g[0], g[-1] + 1) for g in groups[1 : k_max + 1]]


def _cluster_values(lam: np.ndarray, slices) -> np.ndarray:
    if len(lam) < slices[-1].stop:
        raise InsufficientData(
            f"need {slices[-1].stop} eigenvalues, spectrum has {len(lam)}"
        )
    return np.array([lam[s].sum() for s in slices])


_GUARD = 4  # extra eigenpairs so the cluster containing k_max is complete


def _pairs_needed(k_max: int) -> int:
    # worst case every cluster is a double, plus the zero mode and guard
    return 2 * k_max + 1 + _GUARD


def _homog_case(args):
    (width, height, eps, beta, n_edge, fill, k_max, seed) = args
    spec = PerforationSpec(epsilon=eps, beta=beta, nodes_per_cell_edge=n_edge)
    mesh = build_perforated_rectangle(width, height, spec, fill_holes=fill)
    spectrum = solve_problem(
        mesh, ProblemKind.STEKLOV, k=_pairs_needed(k_max), seed=seed
    )
    return mesh, spectrum


def run_homogenisation_sweep(
    eps_list,
    beta: float,
    k_max: int = 3,
    *,
    width: float = 1.0,
    height: float = 1.0,
    nodes_per_cell_edge: int = 8,
    fill_holes: bool = False,
    keep: bool = False,
    seed: int = 0,
    jobs: int = 1,
) -> SweepReport:
    """Steklov spectra of perforated rectangles against the boundary-coupled
    reference problem on the unperforated domain.

    The reference is solved by the same discretisation on an unperforated
    grid matching the finest sweep resolution, so the comparison isolates
    the homogenisation gap rather than discretisation error.  Eigenvalues
    are cluster-summed before comparison.
    """
    eps_sorted = sorted(set(float(e) for e in eps_list), reverse=True)
    if not eps_sorted:
        raise InsufficientData("eps_list must be nonempty")
    cases = [
        (width, height, eps, beta, nodes_per_cell_edge, fill_holes, k_max, seed)
        for eps in eps_sorted
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            solved = list(pool.map(_homog_case, cases))
    else:
        solved = [_homog_case(c) for c in cases]

    ref_spec = PerforationSpec(
        epsilon=eps_sorted[-1], beta=0.0, nodes_per_cell_edge=nodes_per_cell_edge
    )
    ref_mesh = build_perforated_rectangle(width, height, ref_spec)
    ref_spectrum = solve_problem(
        ref_mesh, ProblemKind.DYNAMICAL, k=_pairs_needed(k_max), beta=beta, seed=seed
    )
    slices = _cluster_slices(ref_spectrum.eigenvalues, k_max)
    references = _cluster_values(ref_spectrum.eigenvalues, slices)
    ref_perimeter = boundary_length(ref_mesh, "outer")

    eigenvalues = np.empty((len(eps_sorted), k_max))
    functionals = np.empty_like(eigenvalues)
    gaps = np.empty_like(eigenvalues)
    meta = []
    for i, (mesh, spectrum) in enumerate(solved):
        values = _cluster_values(spectrum.eigenvalues, slices)
        eigenvalues[i] = values
        perim = boundary_length(mesh, "all")
        functionals[i] = values * perim
        gaps[i] = np.abs(values - references) / references
        meta.append(_mesh_meta(mesh))
    slopes: list[SlopeFit | None] = []
    for k in range(k_max):
        try:
            slopes.append(fit_slope(np.asarray(eps_sorted), gaps[:, k]))
        except InsufficientData:
            slopes.append(None)
    return SweepReport(
        parameter="eps",
        values=np.asarray(eps_sorted),
        eigenvalues=eigenvalues,
        references=references,
        gaps=gaps,
        functionals=functionals,
        slopes=slopes,
        mesh_meta=meta,
        extra={
            "beta": beta,
            "reference": "boundary-coupled problem, unperforated grid",
            # limit of sigma_k |dOmega^eps| is Sigma_k (|dOmega| + 2 pi beta |Omega|)
            "reference_functional": " ".join(
                "%.17g" % v
                for v in references
                * (ref_perimeter + 2.0 * np.pi * beta * region_area(ref_mesh, "all"))
            ),
            "reference_checksum": mesh_checksum(ref_mesh),
        },
        meshes=[m for m, _ in solved] + [ref_mesh] if keep else None,
        spectra=[s for _, s in solved] + [ref_spectrum] if keep else None,
    )


def run_beta_sweep(
    beta_list,
    k_max: int = 1,
    *,
    domain: str = "disk",
    resolution: int = 48,
    seed: int = 0,
) -> SweepReport:
    """Boundary-coupled eigenvalues against the Neumann limit as beta grows.

    On the disk both sides are semi-analytic (Bessel roots); on the square
    the problem and its Neumann reference are solved with the same grid, so
    the reported gap isolates the beta-dependence.  Gaps compare
    ``2 pi beta Sigma_k`` with ``mu_k``; functionals are
    ``Sigma_k * (perimeter + 2 pi beta * area)``.
    """
    betas = sorted(set(float(b) for b in beta_list))
    if not betas:
        raise InsufficientData("beta_list must be nonempty")
    if any(b <= 0 for b in betas):
        raise DimensionMismatch("beta sweep needs strictly positive beta")
    eigenvalues = np.empty((len(betas), k_max))
    gaps = np.empty_like(eigenvalues)
    functionals = np.empty_like(eigenvalues)
    meta: list[dict] = []
    if domain == "disk":
        mu = analytic.neumann_disk_eigenvalues(k_max + 1)[1:]
        perimeter, area = 2.0 * np.pi, np.pi
        for i, b in enumerate(betas):
            sig = analytic.dynamical_disk_eigenvalues(b, k_max)
            eigenvalues[i] = sig
            gaps[i] = np.abs(2.0 * np.pi * b * sig - mu) / mu
            functionals[i] = sig * (perimeter + 2.0 * np.pi * b * area)
    elif domain == "square":
        from .mesh import build_rectangle_grid

        mesh = build_rectangle_grid(1.0, 1.0, resolution, resolution)
        neumann = solve_problem(
            mesh, ProblemKind.NEUMANN, k=_pairs_needed(k_max), seed=seed
        )
        slices = _cluster_slices(neumann.eigenvalues, k_max)
        mu = _cluster_values(neumann.eigenvalues, slices)
        perimeter, area = 4.0, 1.0
        meta.append(_mesh_meta(mesh))
        for i, b in enumerate(betas):
            spec = solve_problem(
                mesh, ProblemKind.DYNAMICAL, k=_pairs_needed(k_max), beta=b, seed=seed
            )
            sig = _cluster_values(spec.eigenvalues, slices)
            eigenvalues[i] = sig
            gaps[i] = np.abs(2.0 * np.pi * b * sig - mu) / mu
            functionals[i] = sig * (perimeter + 2.0 * np.pi * b * area)
    else:
        raise DimensionMismatch(f"unknown domain {domain!r}; use disk or square")
    slopes: list[SlopeFit | None] = []
    for k in range(k_max):
        try:
            slopes.append(fit_slope(np.asarray(betas), gaps[:, k]))
        except InsufficientData:
            slopes.append(None)
    return SweepReport(
        parameter="beta",
        values=np.asarray(betas),
        eigenvalues=eigenvalues,
        references=np.asarray(mu),
        gaps=gaps,
        functionals=functionals,
        slopes=slopes,
        mesh_meta=meta,
        extra={"domain": domain, "gap": "relative |2 pi beta Sigma_k - mu_k| / mu_k"},
    )


def shape_functionals(
    kind: ProblemKind | str,
    eigenvalues,
    mesh: Mesh | None = None,
    *,
    perimeter: float | None = None,
    area: float | None = None,
    beta: float = 0.0,
) -> np.ndarray:
    """Scale-invariant normalised functionals for a batch of eigenvalues.

    Steklov eigenvalues are weighted by total perimeter, Neumann by area,
    and boundary-coupled ones by ``perimeter + 2 pi beta * area``.  Geometry
    comes from the mesh when given, else from explicit values.
    """
    kind = ProblemKind.parse(kind) if isinstance(kind, str) else kind
    if mesh is not None:
        perimeter = boundary_length(mesh, "all")
        area = region_area(mesh, "matrix")
    lam = np.asarray(eigenvalues, dtype=np.float64)
    if kind is ProblemKind.STEKLOV:
        if perimeter is None:
            raise InsufficientData("Steklov functional needs a perimeter")
        return lam * perimeter
    if kind is ProblemKind.NEUMANN:
        if area is None:
            raise InsufficientData("Neumann functional needs an area")
        return lam * area
    if perimeter is None or area is None:
        raise InsufficientData(
            "boundary-coupled functional needs perimeter and area"
        )
    return lam * (perimeter + 2.0 * np.pi * beta * area)


@dataclass
class CellScalingRow:
    eps: float
    rho: float
    c_eps: float
    dirichlet_energy: float
    l2_norm: float
    h1_norm: float
    h1_over_eps: float


@dataclass
class CellScalingReport:
    """Unit-cell corrector norms across the period sequence.

    ``rows`` hold per-eps norms of the unit-torus solution at hole radius
    ``rho = beta * eps``; ``slope`` fits ``h1_norm ~ eps**slope`` and
    ``ratio_growth[i]`` is the relative increase of ``h1_norm/eps`` from row
    ``i`` to row ``i+1`` (one halving).  The resolution gate re-solves the
    finest case with doubled resolution and reports the relative change.
    """

    beta: float
    nodes_per_cell_edge: int
    rows: list[CellScalingRow]
    slope: SlopeFit
    ratio_growth: np.ndarray
    gate_delta: float | None
    gate_passed: bool | None

    def table(self) -> TableReport:
        columns = [
            "eps",
            "rho",
            "c_eps",
            "dirichlet_energy",
            "l2_norm",
            "h1_norm",
            "h1_over_eps",
        ]
        rows = [
            (
                r.eps,
                r.rho,
                r.c_eps,
                r.dirichlet_energy,
                r.l2_norm,
                r.h1_norm,
                r.h1_over_eps,
            )
            for r in self.rows
        ]
        meta = {
            "beta": self.beta,
            "nodes_per_cell_edge": self.nodes_per_cell_edge,
            "h1_slope": f"{self.slope.slope:.6g} (r2 {self.slope.r_squared:.4g})",
            "ratio_growth": " ".join(f"{g:.6g}" for g in self.ratio_growth),
        }
        if self.gate_delta is not None:
            meta["resolution_gate_delta"] = f"{self.gate_delta:.6g}"
            meta["resolution_gate_passed"] = str(self.gate_passed)
        return TableReport(
            title="cell-problem scaling",
            columns=columns,
            rows=rows,
            meta=meta,
            x_column="eps",
            y_columns=("h1_norm",),
            log_x=True,
            log_y=True,
        )


def run_cell_scaling(
    eps_list,
    beta: float = 1.0,
    *,
    nodes_per_cell_edge: int = 16,
    gate: bool = True,
    gate_rtol: float = 0.01,
) -> CellScalingReport:
    """Solve the unit-cell corrector problem along a period sequence.

    For each ``eps`` the hole radius on the unit torus is
    ``rho = beta * eps`` (the critical radius ``beta * eps**2`` rescaled by
    the cell size).  In two dimensions the Dirichlet energy is
    scale-invariant, so unit-cell norms are the physically meaningful ones.
    """
    eps_sorted = sorted(set(float(e) for e in eps_list), reverse=True)
    if len(eps_sorted) < 2:
        raise InsufficientData("cell scaling needs at least two eps values")
    rows = []
    for eps in eps_sorted:
        rho = beta * eps
        mesh = build_torus_cell(rho, nodes_per_cell_edge)
        sol = fem.solve_cell_problem(mesh)
        rows.append(
            CellScalingRow(
                eps=eps,
                rho=rho,
                c_eps=sol.c_eps,
                dirichlet_energy=sol.dirichlet_energy,
                l2_norm=sol.l2_norm,
                h1_norm=sol.h1_norm,
                h1_over_eps=sol.h1_norm / eps,
            )
        )
    gate_delta = None
    gate_passed = None
    if gate:
        finest = eps_sorted[-1]
        fine_mesh = build_torus_cell(beta * finest, 2 * nodes_per_cell_edge)
        fine = fem.solve_cell_problem(fine_mesh)
        gate_delta = abs(fine.h1_norm - rows[-1].h1_norm) / fine.h1_norm
        gate_passed = gate_delta <= gate_rtol
    slope = fit_slope(
        np.asarray([r.eps for r in rows]), np.asarray([r.h1_norm for r in rows])
    )
    ratios = np.asarray([r.h1_over_eps for r in rows])
    growth = ratios[1:] / ratios[:-1] - 1.0
    return CellScalingReport(
        beta=beta,
        nodes_per_cell_edge=nodes_per_cell_edge,
        rows=rows,
        slope=slope,
        ratio_growth=growth,
        gate_delta=gate_delta,
        gate_passed=gate_passed,
    )


@dataclass
class ExtensionReport:
    """Energy of hole-fill harmonic extensions of one discrete eigenmode.

    ``per_hole[i]`` is the fill energy of hole ``i`` divided by
    ``(r/eps)**2`` times the mode's bulk Dirichlet energy; ``aggregate``
    sums the fill energies before normalising.
    """

    eps: float
    beta: float
    mode_index: int
    eigenvalue: float
    bulk_energy: float
    per_hole: np.ndarray
    aggregate: float

    def table(self) -> TableReport:
        rows = [(i, float(v)) for i, v in enumerate(self.per_hole)]
        return TableReport(
            title="extension energy ratios",
            columns=["hole", "normalised_energy"],
            rows=rows,
            meta={
                "eps": self.eps,
                "beta": self.beta,
                "mode_index": self.mode_index,
                "eigenvalue": f"{self.eigenvalue:.17g}",
                "bulk_energy": f"{self.bulk_energy:.17g}",
                "aggregate": f"{self.aggregate:.17g}",
            },
            x_column="hole",
            y_columns=("normalised_energy",),
        )


def verify_extension_energy(
    mesh: Mesh,
    mode_index: int = 1,
    spectrum: Spectrum | None = None,
    *,
    seed: int = 0,
) -> ExtensionReport:
    """Extend a Steklov eigenmode into every hole fill and compare energies.

    The normalisation ``(r/eps)**2`` reflects the expected per-hole energy
    budget of the critical perforation; an aggregate ratio of order one
    confirms the extensions cost only a bounded multiple of the mode's bulk
    energy.  The mesh must have been built with filled holes.
    """
    if mesh.perforation is None or mesh.hole_centers is None:
        raise TagMismatch("extension check needs a perforated mesh")
    if not (mesh.region_tags >= 0).any():
        raise TagMismatch("extension check needs hole-fill triangles")
    if spectrum is None:
        spectrum = solve_problem(
            mesh, ProblemKind.STEKLOV, k=mode_index + 1 + _GUARD, seed=seed
        )
    if mode_index >= len(spectrum):
        raise InsufficientData(
            f"mode {mode_index} not in spectrum of length {len(spectrum)}"
        )
    u = nodal_values(mesh, spectrum, mode_index)
    u = np.where(np.isnan(u), 0.0, u)
    _, energies = fem.extend_into_all_holes(mesh, u)
    stiffness = fem.assemble_stiffness(mesh, region="matrix")
    active = _active_dofs(mesh)
    x = spectrum.eigenvectors[:, mode_index]
    bulk = float(x @ (stiffness.restricted(active).csr @ x))
    spec = mesh.perforation
    scale = (spec.radius / spec.epsilon) ** 2 * bulk
    per_hole = energies / scale
    return ExtensionReport(
        eps=spec.epsilon,
        beta=spec.beta,
        mode_index=mode_index,
        eigenvalue=float(spectrum.eigenvalues[mode_index]),
        bulk_energy=bulk,
        per_hole=per_hole,
        aggregate=float(energies.sum() / scale),
    )


@dataclass
class Lemma31Report:
    """Sweep of the annular test-mode energy inequality.

    Each row records the hole-to-bulk energy ratio of one ``(ell, d, r,
    sigma)`` combination against the allowance ``constant * (1 + slack)``;
    combinations outside the admissible flux regime are skipped and
    counted.
    """

    constant: float
    slack: float
    rows: list[tuple]
    n_checked: int
    n_skipped: int
    n_violations: int
    worst_ratio: float
    worst_combo: tuple | None
    fitted_excess: float

    def table(self) -> TableReport:
        return TableReport(
            title="test-mode energy inequality sweep",
            columns=["ell", "dim", "r", "sigma", "ratio", "allowance", "ok"],
            rows=self.rows,
            meta={
                "constant": self.constant,
                "slack": self.slack,
                "n_checked": self.n_checked,
                "n_skipped_out_of_regime": self.n_skipped,
                "n_violations": self.n_violations,
                "worst_ratio": f"{self.worst_ratio:.17g}",
                "worst_combo": str(self.worst_combo),
                "fitted_excess_coefficient": f"{self.fitted_excess:.6g}",
            },
            x_column="sigma",
            y_columns=("ratio",),
        )


def verify_lemma31(
    ells=tuple(range(1, 21)),
    dims=(2, 3, 4),
    sigmas=(0.1, 1.0, 10.0),
    radii=(1e-3, 1e-2),
    constant: float = 5.0,
    slack: float = 0.05,
) -> Lemma31Report:
    """Check ``hole_energy <= constant * r**d * annulus_energy`` over a grid.

    Flux/radius combinations with no admissible profile are skipped, not
    failed.  ``fitted_excess`` is the smallest ``c`` with
    ``ratio <= constant * (1 + c * r**d)`` over every checked combination,
    quantifying how the small-radius allowance closes.
    """
    rows = []
    n_skipped = 0
    n_violations = 0
    worst = -np.inf
    worst_combo = None
    fitted = 0.0
    allowance = constant * (1.0 + slack)
    from .errors import OutOfRegime

    for d in dims:
        for ell in ells:
            for r in radii:
                for sigma in sigmas:
                    try:
                        me = analytic.mode_energy(ell, d, r, sigma)
                    except OutOfRegime:
                        n_skipped += 1
                        continue
                    ratio = me.ratio
                    ok = ratio <= allowance
                    if not ok:
                        n_violations += 1
                    if ratio > worst:
                        worst = ratio
                        worst_combo = (ell, d, r, sigma)
                    fitted = max(fitted, (ratio / constant - 1.0) / r**d)
                    rows.append((ell, d, r, sigma, ratio, allowance, int(ok)))
    return Lemma31Report(
        constant=constant,
        slack=slack,
        rows=rows,
        n_checked=len(rows),
        n_skipped=n_skipped,
        n_violations=n_violations,
        worst_ratio=worst,
        worst_combo=worst_combo,
        fitted_excess=fitted,
    )


@dataclass
class AnnulusReport:
    """Profile of the perimeter-normalised annulus eigenvalue and its peak."""

    radii: np.ndarray
    functional: np.ndarray
    optimum: analytic.AnnulusOptimum

    def table(self) -> TableReport:
        rows = [
            (float(r), float(f), float(f / np.pi))
            for r, f in zip(self.radii, self.functional)
        ]
        return TableReport(
            title="annulus functional profile",
            columns=["inner_radius", "functional", "functional_over_pi"],
            rows=rows,
            meta={
                "optimal_inner_radius": f"{self.optimum.inner_radius:.17g}",
                "optimal_value": f"{self.optimum.value:.17g}",
                "optimal_value_over_pi": f"{self.optimum.value_over_pi:.17g}",
                "sigma_1_at_optimum": f"{self.optimum.sigma_1:.17g}",
            },
            x_column="inner_radius",
            y_columns=("functional_over_pi",),
        )


def run_annulus_profile(
    lo: float = 0.02, hi: float = 0.8, n_points: int = 80
) -> AnnulusReport:
    """Tabulate the normalised annulus functional and locate its maximum."""
    if n_points < 2:
        raise InsufficientData("need at least two profile points")
    radii = np.linspace(lo, hi, n_points)
    vals = np.array([analytic.normalised_annulus_functional(r) for r in radii])
    return AnnulusReport(
        radii=radii, functional=vals, optimum=analytic.optimise_annulus(lo, hi)
    )
