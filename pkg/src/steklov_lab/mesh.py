"""Conforming triangulations of the domains used throughout the package.

Builders cover plain rectangles, structured polar disks and annuli, a
rectangle perforated by a periodic lattice of small circular holes, and a
single flat-torus cell with one hole.  All perforated constructions mesh each
lattice cell independently and rely on every shared node being computed from
one canonical floating-point expression, so cells stitch together exactly by
coordinate identity and the global triangulation is conforming by
construction.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    CriticalRadiusTooLarge,
    DegenerateAnnulus,
    DegenerateCell,
    DimensionMismatch,
    NonAlignedLattice,
)

#: Boundary tag of the outer (non-hole) boundary.
OUTER = -1

#: Region tag of the bulk material; hole-fill triangles carry the hole index.
MATRIX = -1


def hole_radius(epsilon: float, beta: float, dim: int = 2) -> float:
    """Radius ``beta * epsilon**(dim/(dim-1))`` of one hole at period ``epsilon``.

    This is the critical scaling for which the total boundary measure of the
    holes stays comparable to the outer boundary as ``epsilon`` shrinks: the
    number of holes grows like ``epsilon**-dim`` while each contributes
    surface ``~ r**(dim-1)``, so the total hole surface is ``beta**(dim-1)``
    per unit volume.  In two dimensions ``r = beta * epsilon**2``.
    """
    if epsilon <= 0:
        raise DegenerateCell(f"period must be positive, got {epsilon}")
    if beta < 0:
        raise DegenerateCell(f"hole rate must be nonnegative, got {beta}")
    if dim < 2:
        raise DimensionMismatch(f"dimension must be >= 2, got {dim}")
    return beta * epsilon ** (dim / (dim - 1))


@dataclass(frozen=True)
class PerforationSpec:
    """Periodic-perforation parameters for a two-dimensional domain.

    ``epsilon`` is the lattice period, ``beta`` the hole rate so each hole
    has radius ``beta * epsilon**2``, and the two resolution knobs control
    how many nodes appear along a cell edge and around each hole circle.
    """

    epsilon: float
    beta: float
    nodes_per_cell_edge: int = 8
    n_hole_segments: int = 0  # 0 = derived as 4 * nodes_per_cell_edge

    def __post_init__(self) -> None:
        if not 0 < self.epsilon:
            raise DegenerateCell(f"period must be positive, got {self.epsilon}")
        if self.beta < 0:
            raise DegenerateCell(f"hole rate must be nonnegative, got {self.beta}")
        r = hole_radius(self.epsilon, self.beta)
        if self.beta > 0 and r >= self.epsilon / 2:
            raise CriticalRadiusTooLarge(
                f"hole radius {r:g} = beta*eps^2 must stay below eps/2 = "
                f"{self.epsilon / 2:g}; at beta = {self.beta:g} the period "
                f"must satisfy eps < {1.0 / (2.0 * self.beta):g}"
            )
        n = self.nodes_per_cell_edge
        if n < 4 or n % 2:
            raise DegenerateCell(
                f"nodes_per_cell_edge must be an even integer >= 4, got {n}"
            )
        if self.n_hole_segments == 0:
            object.__setattr__(self, "n_hole_segments", 4 * n)
        if self.n_hole_segments != 4 * n:
            raise DegenerateCell(
                "n_hole_segments must equal 4 * nodes_per_cell_edge so hole "
                f"rays and cell-edge nodes pair up; got {self.n_hole_segments} "
                f"with nodes_per_cell_edge {n}"
            )

    @property
    def radius(self) -> float:
        return hole_radius(self.epsilon, self.beta)


@dataclass(frozen=True)
class Mesh:
    """Immutable triangle mesh with tagged boundary edges and regions.

    ``boundary_tags[i]`` is :data:`OUTER` or the hole index of edge ``i``;
    ``region_tags[t]`` is :data:`MATRIX` or the index of the hole that
    triangle ``t`` fills.  ``periodic_pairs`` rows are ``(slave, master)``
    vertex identifications for torus meshes and are empty otherwise.
    """

    vertices: np.ndarray
    triangles: np.ndarray
    boundary_edges: np.ndarray
    boundary_tags: np.ndarray
    region_tags: np.ndarray
    periodic_pairs: np.ndarray = field(
        default_factory=lambda: np.empty((0, 2), dtype=np.int64)
    )
    perforation: PerforationSpec | None = None
    hole_centers: np.ndarray | None = None

    def __post_init__(self) -> None:
        coerce = {
            "vertices": np.float64,
            "triangles": np.int64,
            "boundary_edges": np.int64,
            "boundary_tags": np.int64,
            "region_tags": np.int64,
            "periodic_pairs": np.int64,
        }
        for name, dtype in coerce.items():
            arr = np.ascontiguousarray(getattr(self, name), dtype=dtype)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.hole_centers is not None:
            hc = np.ascontiguousarray(self.hole_centers, dtype=np.float64)
            hc.setflags(write=False)
            object.__setattr__(self, "hole_centers", hc)
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 2:
            raise DimensionMismatch("vertices must have shape (n, 2)")
        if self.triangles.ndim != 2 or self.triangles.shape[1] != 3:
            raise DimensionMismatch("triangles must have shape (m, 3)")
        if self.boundary_edges.shape != (len(self.boundary_tags), 2):
            raise DimensionMismatch("one tag per boundary edge is required")
        if len(self.region_tags) != len(self.triangles):
            raise DimensionMismatch("one region tag per triangle is required")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)


def triangle_areas(mesh: Mesh) -> np.ndarray:
    """Signed areas of all triangles (positive for counterclockwise ones)."""
    p = mesh.vertices[mesh.triangles]
    e1 = p[:, 1] - p[:, 0]
    e2 = p[:, 2] - p[:, 0]
    return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])


def region_mask(mesh: Mesh, region: str | int = "matrix") -> np.ndarray:
    """Boolean triangle mask for ``"matrix"``, ``"fill"``, ``"all"`` or a hole index."""
    if region == "matrix":
        return mesh.region_tags == MATRIX
    if region == "fill":
        return mesh.region_tags >= 0
    if region == "all":
        return np.ones(mesh.n_triangles, dtype=bool)
    if isinstance(region, (int, np.integer)):
        return mesh.region_tags == int(region)
    raise DimensionMismatch(f"unknown region selector {region!r}")


def region_area(mesh: Mesh, region: str | int = "matrix") -> float:
    """Total area of the selected triangles."""
    return float(triangle_areas(mesh)[region_mask(mesh, region)].sum())


def boundary_mask(mesh: Mesh, tags="all") -> np.ndarray:
    """Boolean edge mask for ``"all"``, ``"outer"``, ``"holes"`` or explicit tags."""
    if isinstance(tags, str):
        if tags == "all":
            return np.ones(len(mesh.boundary_edges), dtype=bool)
        if tags == "outer":
            return mesh.boundary_tags == OUTER
        if tags == "holes":
            return mesh.boundary_tags >= 0
        raise DimensionMismatch(f"unknown boundary selector {tags!r}")
    if isinstance(tags, (int, np.integer)):
        tags = [int(tags)]
    wanted = np.asarray(sorted(set(int(t) for t in tags)), dtype=np.int64)
    return np.isin(mesh.boundary_tags, wanted)


def boundary_length(mesh: Mesh, tags="all") -> float:
    """Total length of the selected boundary edges."""
    edges = mesh.boundary_edges[boundary_mask(mesh, tags)]
    if len(edges) == 0:
        return 0.0
    d = mesh.vertices[edges[:, 1]] - mesh.vertices[edges[:, 0]]
    return float(np.hypot(d[:, 0], d[:, 1]).sum())


def dof_map(mesh: Mesh) -> tuple[np.ndarray, int]:
    """Vertex-to-dof map folding periodic slave vertices onto their masters.

    Returns ``(dmap, n_dofs)`` where ``dmap[v]`` is the dof index of vertex
    ``v``.  Without periodic pairs this is the identity.  Dof numbering is
    deterministic: master vertices keep their relative order.
    """
    parent = np.arange(mesh.n_vertices, dtype=np.int64)
    if len(mesh.periodic_pairs):
        parent[mesh.periodic_pairs[:, 0]] = mesh.periodic_pairs[:, 1]
        # resolve chains (a slave whose master is itself a slave)
        while True:
            compressed = parent[parent]
            if np.array_equal(compressed, parent):
                break
            parent = compressed
    masters = np.unique(parent)
    lookup = np.full(mesh.n_vertices, -1, dtype=np.int64)
    lookup[masters] = np.arange(len(masters), dtype=np.int64)
    return lookup[parent], len(masters)


def mesh_checksum(mesh: Mesh) -> str:
    """SHA-256 over a canonical byte serialisation of the mesh arrays."""
    h = hashlib.sha256()
    h.update(b"steklov-lab-mesh-v1")
    for arr in (
        mesh.vertices,
        mesh.triangles,
        mesh.boundary_edges,
        mesh.boundary_tags,
        mesh.region_tags,
        mesh.periodic_pairs,
    ):
        h.update(np.int64(arr.shape[0]).tobytes())
        h.update(np.ascontiguousarray(arr).tobytes())
    return h.hexdigest()


def _boundary_tag_name(tag: int) -> str:
    return "Outer" if tag == OUTER else f"Hole({tag})"


def _region_tag_name(tag: int) -> str:
    return "Matrix" if tag == MATRIX else f"HoleFill({tag})"


def export_mesh_text(mesh: Mesh, path: str) -> None:
    """Write the mesh to a plain-text file with 17-significant-digit floats."""
    lines = [f"# mesh checksum {mesh_checksum(mesh)}"]
    lines.append(f"VERTICES {mesh.n_vertices}")
    for x, y in mesh.vertices:
        lines.append(f"{x:.17g} {y:.17g}")
    lines.append(f"TRIANGLES {mesh.n_triangles}")
    for (a, b, c), tag in zip(mesh.triangles, mesh.region_tags):
        lines.append(f"{a} {b} {c} {_region_tag_name(int(tag))}")
    lines.append(f"EDGES {len(mesh.boundary_edges)}")
    for (a, b), tag in zip(mesh.boundary_edges, mesh.boundary_tags):
        lines.append(f"{a} {b} {_boundary_tag_name(int(tag))}")
    lines.append(f"PERIODIC {len(mesh.periodic_pairs)}")
    for s, m in mesh.periodic_pairs:
        lines.append(f"{s} {m}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


class _MeshBuilder:
    """Accumulates nodes and triangles; deduplicates shared nodes by exact
    floating-point coordinate identity."""

    def __init__(self) -> None:
        self.coords: list[tuple[float, float]] = []
        self.key2id: dict[tuple[float, float], int] = {}
        self.tri_blocks: list[np.ndarray] = []
        self.tri_regions: list[np.ndarray] = []
        self.edge_blocks: list[np.ndarray] = []
        self.edge_tags: list[np.ndarray] = []

    def shared_node(self, x: float, y: float) -> int:
        key = (float(x), float(y))
        idx = self.key2id.get(key)
        if idx is None:
            idx = len(self.coords)
            self.key2id[key] = idx
            self.coords.append(key)
        return idx

    def private_nodes(self, xy: np.ndarray) -> np.ndarray:
        base = len(self.coords)
        self.coords.extend((float(x), float(y)) for x, y in xy)
        return np.arange(base, base + len(xy), dtype=np.int64)

    def add_triangles(self, a, b, c, region: int) -> None:
        block = np.column_stack(
            [np.asarray(a, np.int64), np.asarray(b, np.int64), np.asarray(c, np.int64)]
        )
        self.tri_blocks.append(block)
        self.tri_regions.append(np.full(len(block), region, dtype=np.int64))

    def add_edges(self, a, b, tag: int) -> None:
        block = np.column_stack([np.asarray(a, np.int64), np.asarray(b, np.int64)])
        self.edge_blocks.append(block)
        self.edge_tags.append(np.full(len(block), tag, dtype=np.int64))

    def finish(self, **mesh_kwargs) -> Mesh:
        tris = (
            np.vstack(self.tri_blocks)
            if self.tri_blocks
            else np.empty((0, 3), np.int64)
        )
        regions = (
            np.concatenate(self.tri_regions) if self.tri_regions else np.empty(0, np.int64)
        )
        edges = (
            np.vstack(self.edge_blocks)
            if self.edge_blocks
            else np.empty((0, 2), np.int64)
        )
        tags = (
            np.concatenate(self.edge_tags) if self.edge_tags else np.empty(0, np.int64)
        )
        return Mesh(
            vertices=np.asarray(self.coords, dtype=np.float64),
            triangles=tris,
            boundary_edges=edges,
            boundary_tags=tags,
            region_tags=regions,
            **mesh_kwargs,
        )


@lru_cache(maxsize=32)
def _edge_offsets(n: int) -> np.ndarray:
    """Node offsets along a full cell edge, in units of the period.

    ``t[m] = tan(pi*(2m - n)/(4n)) / 2`` places ``n + 1`` nodes on
    ``[-1/2, 1/2]`` so the rays from the cell centre through them are
    equally spaced in angle.  The table is built antisymmetric bit for bit
    (``t[n - m] == -t[m]``) and the endpoints and midpoint are patched to
    exact halves and zero, which is what lets opposite cell edges share
    identical coordinates.
    """
    t = np.empty(n + 1)
    for m in range(n // 2 + 1):
        t[m] = -0.5 * np.tan(np.pi * (n - 2 * m) / (4 * n))
    for m in range(n // 2 + 1, n + 1):
        t[m] = -t[n - m]
    t[0] = -0.5
    t[n // 2] = 0.0
    t[n] = 0.5
    t.setflags(write=False)
    return t


def _radial_fractions(r: float, a: float, n: int, growth: float = 1.5) -> np.ndarray:
    """Radial layer fractions in ``[0, 1]`` between hole (0) and cell edge (1).

    Step lengths grade geometrically from roughly the hole chord length up to
    the cell-edge node spacing, then the whole schedule is rescaled to span
    ``a - r`` exactly.
    """
    span = a - r
    first = 2.0 * np.pi * r / (4 * n)
    cap = 2.0 * a / n
    steps = [min(first, span)]
    while sum(steps) < span:
        steps.append(min(steps[-1] * growth, cap))
    cum = np.concatenate([[0.0], np.cumsum(steps)])
    frac = cum / cum[-1]
    frac[-1] = 1.0
    return frac


def _ring_cell(
    b: _MeshBuilder,
    ci: int,
    cj: int,
    eps: float,
    r: float,
    n: int,
    hole_tag: int,
    fill: bool,
) -> None:
    """Mesh one square lattice cell centred at ``eps*(ci, cj)`` with a
    circular hole of radius ``r``, rays matching the cell-edge node layout."""
    t = _edge_offsets(n)
    ng = 4 * n
    bids = np.empty(ng, dtype=np.int64)
    for e in range(4):
        for mp in range(n):
            q = (e * n + mp - n // 2) % ng
            if e == 0:
                x, y = eps * (ci + 0.5), eps * (cj + t[mp])
            elif e == 1:
                x, y = eps * (ci - t[mp]), eps * (cj + 0.5)
            elif e == 2:
                x, y = eps * (ci - 0.5), eps * (cj - t[mp])
            else:
                x, y = eps * (ci + t[mp]), eps * (cj - 0.5)
            bids[q] = b.shared_node(x, y)

    theta = 2.0 * np.pi * np.arange(ng) / ng
    cx, cy = eps * ci, eps * cj
    hole_xy = np.column_stack([cx + r * np.cos(theta), cy + r * np.sin(theta)])

    frac = _radial_fractions(r, eps / 2.0, n)
    layers = len(frac) - 1
    ids = np.empty((ng, layers + 1), dtype=np.int64)
    ids[:, 0] = b.private_nodes(hole_xy)
    ids[:, layers] = bids
    if layers > 1:
        bxy = np.array([b.coords[i] for i in bids])
        for s in range(1, layers):
            xy = hole_xy * (1.0 - frac[s]) + bxy * frac[s]
            ids[:, s] = b.private_nodes(xy)

    nxt = np.roll(np.arange(ng), -1)
    for s in range(layers):
        a0, a1 = ids[:, s], ids[nxt, s]
        b0, b1 = ids[:, s + 1], ids[nxt, s + 1]
        b.add_triangles(a0, b0, b1, MATRIX)
        b.add_triangles(a0, b1, a1, MATRIX)
    b.add_edges(ids[:, 0], ids[nxt, 0], hole_tag)

    if fill:
        centre = b.private_nodes(np.array([[cx, cy]]))[0]
        ring1 = b.private_nodes(
            np.column_stack(
                [cx + (r / 3.0) * np.cos(theta), cy + (r / 3.0) * np.sin(theta)]
            )
        )
        ring2 = b.private_nodes(
            np.column_stack(
                [cx + (2.0 * r / 3.0) * np.cos(theta), cy + (2.0 * r / 3.0) * np.sin(theta)]
            )
        )
        b.add_triangles(
            np.full(ng, centre, dtype=np.int64), ring1, ring1[nxt], hole_tag
        )
        for inner, outer in ((ring1, ring2), (ring2, ids[:, 0])):
            b.add_triangles(inner, outer, outer[nxt], hole_tag)
            b.add_triangles(inner, outer[nxt], inner[nxt], hole_tag)


def _tensor_cell(b: _MeshBuilder, xs: np.ndarray, ys: np.ndarray, outer_sides=()) -> None:
    """Mesh an axis-aligned rectangle as a tensor grid of given node lines.

    ``outer_sides`` lists sides (``"left"``, ``"right"``, ``"bottom"``,
    ``"top"``) lying on the outer domain boundary; their edges are tagged.
    """
    nx, ny = len(xs), len(ys)
    ids = np.empty((nx, ny), dtype=np.int64)
    for ix in range(nx):
        for iy in range(ny):
            ids[ix, iy] = b.shared_node(xs[ix], ys[iy])
    v00 = ids[:-1, :-1].ravel()
    v10 = ids[1:, :-1].ravel()
    v01 = ids[:-1, 1:].ravel()
    v11 = ids[1:, 1:].ravel()
    b.add_triangles(v00, v10, v11, MATRIX)
    b.add_triangles(v00, v11, v01, MATRIX)
    side_nodes = {
        "left": ids[0, :],
        "right": ids[-1, :],
        "bottom": ids[:, 0],
        "top": ids[:, -1],
    }
    for side in outer_sides:
        nodes = side_nodes[side]
        b.add_edges(nodes[:-1], nodes[1:], OUTER)


def build_rectangle_grid(width: float, height: float, nx: int, ny: int) -> Mesh:
    """Uniform triangulation of ``[0, width] x [0, height]`` with ``nx * ny``
    quads split along the southwest-to-northeast diagonal."""
    if width <= 0 or height <= 0:
        raise DegenerateCell("rectangle sides must be positive")
    if nx < 1 or ny < 1:
        raise DegenerateCell("subdivision counts must be >= 1")
    xs = width * np.arange(nx + 1) / nx
    ys = height * np.arange(ny + 1) / ny
    b = _MeshBuilder()
    _tensor_cell(b, xs, ys, outer_sides=("left", "right", "bottom", "top"))
    return b.finish()


def build_polar_mesh(
    inner_radius: float, outer_radius: float, n_rings: int, n_sectors: int
) -> Mesh:
    """Structured polar mesh of a disk (``inner_radius == 0``) or annulus.

    ``n_rings`` counts radial intervals and ``n_sectors`` angular ones.  The
    inner circle of an annulus is tagged as hole 0, the outer circle as the
    outer boundary.
    """
    if inner_radius < 0:
        raise DegenerateAnnulus(f"inner radius must be >= 0, got {inner_radius}")
    if inner_radius >= outer_radius:
        raise DegenerateAnnulus(
            f"need inner < outer, got {inner_radius} >= {outer_radius}"
        )
    if n_rings < 1 or n_sectors < 8:
        raise DegenerateCell("need n_rings >= 1 and n_sectors >= 8")
    theta = 2.0 * np.pi * np.arange(n_sectors) / n_sectors
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    nxt = np.roll(np.arange(n_sectors), -1)
    b = _MeshBuilder()
    if inner_radius == 0.0:
        radii = outer_radius * np.arange(1, n_rings + 1) / n_rings
        centre = b.private_nodes(np.array([[0.0, 0.0]]))[0]
        rings = [
            b.private_nodes(np.column_stack([rad * cos_t, rad * sin_t]))
            for rad in radii
        ]
        b.add_triangles(
            np.full(n_sectors, centre, dtype=np.int64), rings[0], rings[0][nxt], MATRIX
        )
        inner_tag_ring = None
    else:
        radii = inner_radius + (outer_radius - inner_radius) * np.arange(
            n_rings + 1
        ) / n_rings
        rings = [
            b.private_nodes(np.column_stack([rad * cos_t, rad * sin_t]))
            for rad in radii
        ]
        inner_tag_ring = rings[0]
    for inner, outer in zip(rings[:-1], rings[1:]):
        b.add_triangles(inner, outer, outer[nxt], MATRIX)
        b.add_triangles(inner, outer[nxt], inner[nxt], MATRIX)
    if inner_tag_ring is not None:
        b.add_edges(inner_tag_ring, inner_tag_ring[nxt], 0)
    b.add_edges(rings[-1], rings[-1][nxt], OUTER)
    return b.finish()


def build_perforated_rectangle(
    width: float, height: float, spec: PerforationSpec, fill_holes: bool = False
) -> Mesh:
    """Rectangle ``[0, width] x [0, height]`` perforated by circular holes of
    radius ``beta * eps**2`` centred at the interior lattice points
    ``eps * (i, j)``.

    Boundary cells (half and quarter cells around the rim) carry no holes, so
    the hole count is ``(width/eps - 1) * (height/eps - 1)``.  With
    ``fill_holes`` each hole is additionally triangulated by a small fan
    tagged with the hole index, leaving the union a mesh of the full
    rectangle whose matrix region is the perforated domain.
    """
    eps = spec.epsilon
    nx_f = width / eps
    ny_f = height / eps
    nx, ny = round(nx_f), round(ny_f)
    if (
        nx < 2
        or ny < 2
        or abs(nx * eps - width) > 1e-9 * width
        or abs(ny * eps - height) > 1e-9 * height
    ):
        raise NonAlignedLattice(
            f"sides ({width}, {height}) must be integer multiples (>= 2) of "
            f"the period {eps}"
        )
    n = spec.nodes_per_cell_edge
    if spec.beta == 0.0:
        grid = build_rectangle_grid(width, height, nx * n, ny * n)
        return Mesh(
            vertices=grid.vertices,
            triangles=grid.triangles,
            boundary_edges=grid.boundary_edges,
            boundary_tags=grid.boundary_tags,
            region_tags=grid.region_tags,
            perforation=spec,
            hole_centers=np.empty((0, 2)),
        )
    r = spec.radius
    b = _MeshBuilder()
    centres = []
    k = 0
    for j in range(1, ny):
        for i in range(1, nx):
            _ring_cell(b, i, j, eps, r, n, hole_tag=k, fill=fill_holes)
            centres.append((eps * i, eps * j))
            k += 1
    t = _edge_offsets(n)
    half = np.arange(n // 2 + 1) / n  # ascending 0 .. 1/2 in lattice units
    for j in range(1, ny):
        _tensor_cell(b, eps * half, eps * (j + t), outer_sides=("left",))
        _tensor_cell(b, eps * (nx - half[::-1]), eps * (j + t), outer_sides=("right",))
    for i in range(1, nx):
        _tensor_cell(b, eps * (i + t), eps * half, outer_sides=("bottom",))
        _tensor_cell(b, eps * (i + t), eps * (ny - half[::-1]), outer_sides=("top",))
    corner_sides = {
        (0, 0): ("left", "bottom"),
        (1, 0): ("right", "bottom"),
        (0, 1): ("left", "top"),
        (1, 1): ("right", "top"),
    }
    for (sx, sy), sides in corner_sides.items():
        xs = eps * (nx - half[::-1]) if sx else eps * half
        ys = eps * (ny - half[::-1]) if sy else eps * half
        _tensor_cell(b, xs, ys, outer_sides=sides)
    return b.finish(perforation=spec, hole_centers=np.asarray(centres))


def build_torus_cell(rho: float, nodes_per_cell_edge: int = 16) -> Mesh:
    """Unit periodicity cell ``[-1/2, 1/2]^2`` with a hole of radius ``rho``
    at the origin and opposite edges identified through periodic pairs."""
    if not 0.0 < rho < 0.5:
        raise DegenerateCell(f"hole radius must lie in (0, 1/2), got {rho}")
    n = nodes_per_cell_edge
    if n < 4 or n % 2:
        raise DegenerateCell(
            f"nodes_per_cell_edge must be an even integer >= 4, got {n}"
        )
    b = _MeshBuilder()
    _ring_cell(b, 0, 0, 1.0, rho, n, hole_tag=0, fill=False)
    t = _edge_offsets(n)
    pairs = []
    for m in range(1, n):
        pairs.append((b.key2id[(0.5, t[m])], b.key2id[(-0.5, t[m])]))
        pairs.append((b.key2id[(-t[m], 0.5)], b.key2id[(-t[m], -0.5)]))
    ll = b.key2id[(-0.5, -0.5)]
    for corner in ((0.5, -0.5), (0.5, 0.5), (-0.5, 0.5)):
        pairs.append((b.key2id[corner], ll))
    return b.finish(periodic_pairs=np.asarray(pairs, dtype=np.int64))
