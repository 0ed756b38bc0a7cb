"""Piecewise-linear finite elements on triangle meshes.

Assembles exact elemental integrals (constant gradients on triangles, exact
mass matrices) into symmetric sparse operators, solves the harmonic
extension of boundary data into hole fills, and solves the periodic cell
problem driven by uniform hole-boundary flux.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import (
    DimensionMismatch,
    EmptyBoundarySelection,
    IncompatibleLoad,
)
from .mesh import (
    MATRIX,
    Mesh,
    boundary_mask,
    dof_map,
    region_mask,
)


@dataclass(frozen=True)
class SymmetricSparseMatrix:
    """Symmetric positive semi-definite sparse operator in CSR form.

    Exact symmetry holds because every off-diagonal contribution is inserted
    as a ``(i, j)`` / ``(j, i)`` pair with the identical floating-point value
    before duplicate summation, and CSR duplicate folding adds entries of a
    column in a fixed order for both triangle orders.
    """

    csr: sp.csr_matrix

    @property
    def n(self) -> int:
        return self.csr.shape[0]

    @property
    def nnz(self) -> int:
        return self.csr.nnz

    def matvec(self, x: np.ndarray) -> np.ndarray:
        return self.csr @ x

    def quad(self, x: np.ndarray, y: np.ndarray | None = None) -> float:
        """Quadratic (or bilinear) form ``x^T A y``."""
        if y is None:
            y = x
        return float(x @ (self.csr @ y))

    def toarray(self) -> np.ndarray:
        return self.csr.toarray()

    def restricted(self, idx: np.ndarray) -> "SymmetricSparseMatrix":
        """Principal submatrix on the given index set."""
        sub = self.csr[idx][:, idx].tocsr()
        return SymmetricSparseMatrix(sub)

    @staticmethod
    def from_dense(a: np.ndarray) -> "SymmetricSparseMatrix":
        a = np.asarray(a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch("dense input must be square")
        if not np.array_equal(a, a.T):
            raise DimensionMismatch("dense input must be exactly symmetric")
        return SymmetricSparseMatrix(sp.csr_matrix(a))


def export_matrix_text(matrix: SymmetricSparseMatrix, path: str) -> None:
    """Write the operator as ``row col value`` coordinate triplets."""
    coo = matrix.csr.tocoo()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# symmetric sparse matrix, n = {matrix.n}, nnz = {coo.nnz}\n")
        for i, j, v in zip(coo.row, coo.col, coo.data):
            fh.write(f"{i} {j} {v:.17g}\n")


def _tri_geometry(mesh: Mesh, tris: np.ndarray):
    p = mesh.vertices[tris]
    e1 = p[:, 1] - p[:, 0]
    e2 = p[:, 2] - p[:, 0]
    det = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0]
    return p, det


def _local_stiffness(mesh: Mesh, tris: np.ndarray) -> np.ndarray:
    """Elemental stiffness blocks ``(m, 3, 3)`` from constant P1 gradients."""
    p, det = _tri_geometry(mesh, tris)
    x, y = p[..., 0], p[..., 1]
    # b_i = y_{i+1} - y_{i+2},  c_i = x_{i+2} - x_{i+1}  (cyclic), over 2A = det
    b = np.stack([y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1)
    c = np.stack([x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1)
    scale = 1.0 / (2.0 * det)
    return (np.einsum("ti,tj->tij", b, b) + np.einsum("ti,tj->tij", c, c)) * scale[
        :, None, None
    ]


_MASS_PATTERN = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]]) / 12.0


def _local_mass(mesh: Mesh, tris: np.ndarray) -> np.ndarray:
    _, det = _tri_geometry(mesh, tris)
    area = 0.5 * det
    return _MASS_PATTERN[None, :, :] * area[:, None, None]


def _assemble(
    local: np.ndarray, elems: np.ndarray, n_dofs: int
) -> SymmetricSparseMatrix:
    k = elems.shape[1]
    rows = np.repeat(elems, k, axis=1).ravel()
    cols = np.tile(elems, (1, k)).ravel()
    mat = sp.coo_matrix(
        (local.ravel(), (rows, cols)), shape=(n_dofs, n_dofs)
    ).tocsr()
    mat.sum_duplicates()
    return SymmetricSparseMatrix(mat)


def _selected_triangles(mesh: Mesh, region) -> np.ndarray:
    mask = region_mask(mesh, region)
    if not mask.any():
        raise EmptyBoundarySelection(f"region {region!r} selects no triangles")
    return mesh.triangles[mask]


def assemble_stiffness(mesh: Mesh, region="matrix") -> SymmetricSparseMatrix:
    """Dirichlet-energy matrix of the selected region, on periodic dofs.

    Positive semi-definite with the constant vector in its kernel: each
    elemental block has zero row sums, so assembled row sums vanish exactly
    up to floating-point addition of exact elemental values.
    """
    dmap, n_dofs = dof_map(mesh)
    tris = _selected_triangles(mesh, region)
    return _assemble(_local_stiffness(mesh, tris), dmap[tris], n_dofs)


def assemble_mass(mesh: Mesh, region="matrix") -> SymmetricSparseMatrix:
    """L2 mass matrix of the selected region; row sums integrate hat functions."""
    dmap, n_dofs = dof_map(mesh)
    tris = _selected_triangles(mesh, region)
    return _assemble(_local_mass(mesh, tris), dmap[tris], n_dofs)


def assemble_boundary_mass(mesh: Mesh, tags="all") -> SymmetricSparseMatrix:
    """Boundary L2 mass matrix over the selected tagged edges.

    Total mass equals the selected boundary length; the matrix is positive
    semi-definite with rank equal to the number of boundary dofs touched.
    """
    mask = boundary_mask(mesh, tags)
    if not mask.any():
        raise EmptyBoundarySelection(f"boundary selector {tags!r} matches no edges")
    dmap, n_dofs = dof_map(mesh)
    edges = mesh.boundary_edges[mask]
    d = mesh.vertices[edges[:, 1]] - mesh.vertices[edges[:, 0]]
    length = np.hypot(d[:, 0], d[:, 1])
    pattern = np.array([[2.0, 1.0], [1.0, 2.0]]) / 6.0
    local = pattern[None, :, :] * length[:, None, None]
    return _assemble(local, dmap[edges], n_dofs)


def assemble_boundary_load(mesh: Mesh, tags="all", density: float = 1.0) -> np.ndarray:
    """Load vector of a constant flux density over the selected edges."""
    mass = assemble_boundary_mass(mesh, tags)
    return density * (mass.csr @ np.ones(mass.n))


@dataclass(frozen=True)
class ExtensionResult:
    """Harmonic extension of boundary data into one hole fill."""

    hole: int
    vertex_ids: np.ndarray
    values: np.ndarray
    dirichlet_energy: float


def _triangle_energies(mesh: Mesh, tris: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Per-triangle Dirichlet energies of a nodal field (vertex indexing)."""
    local = _local_stiffness(mesh, tris)
    v = values[tris]
    return np.einsum("ti,tij,tj->t", v, local, v)


def solve_harmonic_extension(mesh: Mesh, hole: int, values: np.ndarray) -> ExtensionResult:
    """Extend nodal boundary values of one hole harmonically into its fill.

    ``values`` is a full-length nodal array (vertex indexing); only its
    entries on the hole's boundary circle are read.  The discrete maximum
    principle of the P1 Laplacian on the fan keeps the extension within the
    range of the boundary data.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (mesh.n_vertices,):
        raise DimensionMismatch(
            f"values must have one entry per vertex ({mesh.n_vertices})"
        )
    tri_mask = region_mask(mesh, int(hole))
    if not tri_mask.any():
        raise EmptyBoundarySelection(f"mesh has no fill triangles for hole {hole}")
    tris = mesh.triangles[tri_mask]
    nodes = np.unique(tris)
    edge_mask = boundary_mask(mesh, int(hole))
    fixed = np.unique(mesh.boundary_edges[edge_mask])
    free = np.setdiff1d(nodes, fixed, assume_unique=True)
    local = _local_stiffness(mesh, tris)
    pos = np.full(mesh.n_vertices, -1, dtype=np.int64)
    pos[nodes] = np.arange(len(nodes))
    k_loc = _assemble(local, pos[tris], len(nodes))
    u = np.zeros(len(nodes))
    u[pos[fixed]] = values[fixed]
    if len(free):
        kf = k_loc.csr[pos[free]]
        rhs = -(kf[:, pos[fixed]] @ u[pos[fixed]])
        sol = spla.spsolve(kf[:, pos[free]].tocsc(), rhs)
        u[pos[free]] = np.atleast_1d(sol)
    full = values.copy()
    full[nodes] = u
    energy = float(_triangle_energies(mesh, tris, full).sum())
    return ExtensionResult(
        hole=int(hole), vertex_ids=nodes, values=u, dirichlet_energy=energy
    )


def extend_into_all_holes(mesh: Mesh, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Harmonically extend a nodal field into every hole fill at once.

    Returns the extended nodal array and the per-hole Dirichlet energies.
    The fills are disjoint, so one block-diagonal solve covers all holes.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (mesh.n_vertices,):
        raise DimensionMismatch(
            f"values must have one entry per vertex ({mesh.n_vertices})"
        )
    fill_mask = region_mask(mesh, "fill")
    if not fill_mask.any():
        raise EmptyBoundarySelection("mesh has no fill triangles")
    tris = mesh.triangles[fill_mask]
    regions = mesh.region_tags[fill_mask]
    nodes = np.unique(tris)
    fixed = np.unique(mesh.boundary_edges[boundary_mask(mesh, "holes")])
    free = np.setdiff1d(nodes, fixed, assume_unique=True)
    pos = np.full(mesh.n_vertices, -1, dtype=np.int64)
    pos[nodes] = np.arange(len(nodes))
    k_loc = _assemble(_local_stiffness(mesh, tris), pos[tris], len(nodes))
    u = np.zeros(len(nodes))
    u[pos[fixed]] = values[fixed]
    if len(free):
        kf = k_loc.csr[pos[free]]
        rhs = -(kf[:, pos[fixed]] @ u[pos[fixed]])
        sol = spla.spsolve(kf[:, pos[free]].tocsc(), rhs)
        u[pos[free]] = np.atleast_1d(sol)
    extended = values.copy()
    extended[nodes] = u
    tri_energy = _triangle_energies(mesh, tris, extended)
    n_holes = int(regions.max()) + 1
    energies = np.zeros(n_holes)
    np.add.at(energies, regions, tri_energy)
    return extended, energies


@dataclass(frozen=True)
class CellSolution:
    """Solution of the periodic cell problem with unit hole-boundary flux.

    The corrector has mean zero; ``c_eps`` is the constant bulk source
    balancing the boundary flux, equal to hole perimeter over cell area in
    the discrete geometry.
    """

    psi: np.ndarray
    c_eps: float
    dirichlet_energy: float
    l2_norm: float
    residual: float

    @property
    def h1_norm(self) -> float:
        return float(np.sqrt(self.dirichlet_energy + self.l2_norm**2))


def solve_cell_problem(mesh: Mesh, compatibility_tol: float = 1e-9) -> CellSolution:
    """Solve ``-laplace(psi) = -c_eps`` on the punctured torus with unit
    inward flux ``d(psi)/dn = 1`` on the hole circle, normalised to mean zero.

    ``c_eps`` is chosen from the discrete geometry so the load is exactly
    compatible with the pure-Neumann operator; the singular system is pinned
    at one dof and the mean removed afterwards.
    """
    k = assemble_stiffness(mesh, region="matrix")
    m = assemble_mass(mesh, region="matrix")
    b_mass = assemble_boundary_mass(mesh, tags="holes")
    ones = np.ones(k.n)
    perimeter = float(ones @ (b_mass.csr @ ones))
    area = float(ones @ (m.csr @ ones))
    c_eps = perimeter / area
    load = b_mass.csr @ ones - c_eps * (m.csr @ ones)
    defect = abs(float(load.sum()))
    scale = float(np.abs(load).sum()) or 1.0
    if defect > compatibility_tol * scale:
        raise IncompatibleLoad(
            f"load sums to {defect:g} (relative {defect / scale:g}); the "
            "singular Neumann system requires a zero-mean load"
        )
    weights = np.ones(k.n)
    weights[0] = 0.0
    p = sp.diags(weights)
    pinned = (p @ k.csr @ p).tocsc() + sp.coo_matrix(
        ([1.0], ([0], [0])), shape=k.csr.shape
    ).tocsc()
    rhs = load.copy()
    rhs[0] = 0.0
    lu = spla.splu(pinned, permc_spec="MMD_AT_PLUS_A")
    psi = lu.solve(rhs)
    psi = psi - float(ones @ (m.csr @ psi)) / area
    res = float(np.linalg.norm(k.csr @ psi - load))
    res_scale = float(np.linalg.norm(load)) or 1.0
    energy = k.quad(psi)
    l2 = float(np.sqrt(max(m.quad(psi), 0.0)))
    return CellSolution(
        psi=psi,
        c_eps=c_eps,
        dirichlet_energy=energy,
        l2_norm=l2,
        residual=res / res_scale,
    )
