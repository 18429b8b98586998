"""Convex-hull geometry on centrally symmetric point sets.

The quantity of interest is the largest t such that the norm ball of
radius t fits inside conv(points).  For a full-dimensional polytope with
the origin interior this equals min over facets {u . y = c} of
c / dual_norm(u); lower-dimensional hulls get radius 0.

Two routes compute it: an explicit hull construction (monotone chain in
2-d, Qhull in 3-d), and a candidate-normal sweep that evaluates the
support ratio max_i |u . p_i| / dual_norm(u) over every normal spanned by
point pairs (2-d) or point triples (3-d).  Every facet normal appears
among the candidates and every candidate ratio upper-bounds the radius,
so both routes agree exactly; the sweep form vectorizes across many point
configurations at once.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .core import NormKind
from .errors import UnsupportedDimensionError

_DUAL = {NormKind.L1: NormKind.LINF, NormKind.L2: NormKind.L2,
         NormKind.LINF: NormKind.L1}

_DEGENERATE_REL = 1e-13


def dual_kind(kind: NormKind) -> NormKind:
    return _DUAL[kind]


def vector_norms(rows: np.ndarray, kind: NormKind) -> np.ndarray:
    """Row-wise vector norms of a (..., d) array."""
    v = np.asarray(rows, dtype=float)
    if kind is NormKind.L1:
        return np.sum(np.abs(v), axis=-1)
    if kind is NormKind.L2:
        return np.sqrt(np.sum(v * v, axis=-1))
    return np.max(np.abs(v), axis=-1)


# ---------------------------------------------------------------------------
# Explicit hull facets


def hull_facets_2d(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Outward facet normals and offsets of a planar hull (monotone chain).

    Returns (U, c) with interior satisfying U @ y <= c row-wise; empty
    arrays when the hull is lower-dimensional.
    """
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if pts.shape[0] < 3:
        return np.zeros((0, 2)), np.zeros(0)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    ordered = sorted(map(tuple, pts))
    lower: list = []
    for p in ordered:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(ordered):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    verts = np.array(lower[:-1] + upper[:-1])
    if verts.shape[0] < 3:
        return np.zeros((0, 2)), np.zeros(0)
    # Orient counterclockwise so edge perpendiculars point outward.
    area2 = float(np.sum(verts[:, 0] * np.roll(verts[:, 1], -1)
                         - np.roll(verts[:, 0], -1) * verts[:, 1]))
    if area2 < 0:
        verts = verts[::-1]
    edges = np.roll(verts, -1, axis=0) - verts
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
    offsets = np.sum(normals * verts, axis=1)
    return normals, offsets


def hull_facets_3d(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Outward facet normals and offsets in 3-d via Qhull."""
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] < 4:
        return np.zeros((0, 3)), np.zeros(0)
    try:
        hull = ConvexHull(pts)
    except QhullError:
        # Coplanar or lower-dimensional input.
        return np.zeros((0, 3)), np.zeros(0)
    eq = hull.equations
    return eq[:, :3], -eq[:, 3]


def hull_facets(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    d = np.asarray(points).shape[1]
    if d == 2:
        return hull_facets_2d(points)
    if d == 3:
        return hull_facets_3d(points)
    raise UnsupportedDimensionError(
        f"exact hull facets are available for d in {{2, 3}}, got d={d}; "
        "use support_radius_upper for a sampled (non-certified) estimate"
    )


def inscribed_radius(points: np.ndarray, kind: NormKind) -> float:
    """Largest t with the kind-norm ball of radius t inside conv(points).

    The input must be centrally symmetric (closed under negation); the
    result is 0 whenever the hull is lower-dimensional.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise ValueError("points must be a non-empty (k, d) array")
    d = pts.shape[1]
    scale = float(np.max(np.abs(pts))) if pts.size else 0.0
    tol = 1e-9 * (1.0 + scale)
    for p in pts:
        if np.min(vector_norms(pts + p, NormKind.LINF)) > tol:
            raise ValueError("points must be centrally symmetric")
    if d == 1:
        return float(np.max(np.abs(pts)))
    normals, offsets = hull_facets(pts)
    if normals.shape[0] == 0:
        return 0.0
    if np.min(offsets) <= 0.0:
        return 0.0
    return float(np.min(offsets / vector_norms(normals, dual_kind(kind))))


def support_radius_upper(points: np.ndarray, kind: NormKind,
                         directions: np.ndarray) -> float:
    """Non-certified upper estimate of the inscribed radius.

    Minimizes the support ratio over the supplied directions only; any
    direction gives an upper bound of the true radius, so a finite sample
    can only overestimate.
    """
    pts = np.asarray(points, dtype=float)
    dirs = np.asarray(directions, dtype=float)
    duals = vector_norms(dirs, dual_kind(kind))
    keep = duals > 0
    if not np.any(keep):
        raise ValueError("no usable directions")
    h = np.max(np.abs(dirs[keep] @ pts.T), axis=1)
    return float(np.min(h / duals[keep]))


# ---------------------------------------------------------------------------
# Vectorized radius evaluation across many base points


@lru_cache(maxsize=None)
def _pair_candidates(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Index/sign arrays for 2-d candidate normals over m base points.

    Candidates are perpendiculars of differences sigma_j p_j - sigma_i p_i;
    the sign pattern (-,-) duplicates (+,+) up to global flip and is left
    out, as are antipodal pairs (an edge between p and -p would put the
    origin on the hull boundary, which only happens in flat cases already
    handled by the zero-offset path).
    """
    ii, jj, ss = [], [], []
    for i, j in combinations(range(m), 2):
        for sign_j in (1.0, -1.0):
            ii.append(i)
            jj.append(j)
            ss.append(sign_j)
    return (np.array(ii, dtype=np.intp), np.array(jj, dtype=np.intp),
            np.array(ss))


@lru_cache(maxsize=None)
def _triple_candidates(m: int) -> tuple[np.ndarray, ...]:
    """Index/sign arrays for 3-d candidate normals over m base points."""
    ia, ib, ic, sb, sc = [], [], [], [], []
    for a, b, c in combinations(range(m), 3):
        for sign_b in (1.0, -1.0):
            for sign_c in (1.0, -1.0):
                ia.append(a)
                ib.append(b)
                ic.append(c)
                sb.append(sign_b)
                sc.append(sign_c)
    return (np.array(ia, dtype=np.intp), np.array(ib, dtype=np.intp),
            np.array(ic, dtype=np.intp), np.array(sb), np.array(sc))


def _radius_values_2d(pts: np.ndarray, kind: NormKind) -> np.ndarray:
    s, m, _ = pts.shape
    if m < 2:
        return np.zeros(s)
    ii, jj, sj = _pair_candidates(m)
    diff = sj[None, :, None] * pts[:, jj, :] - pts[:, ii, :]
    normals = np.stack([diff[..., 1], -diff[..., 0]], axis=-1)
    return _support_minimum(pts, normals, kind, degree=1)


def _radius_values_3d(pts: np.ndarray, kind: NormKind) -> np.ndarray:
    s, m, _ = pts.shape
    if m < 3:
        return np.zeros(s)
    ia, ib, ic, sb, sc = _triple_candidates(m)
    e1 = sb[None, :, None] * pts[:, ib, :] - pts[:, ia, :]
    e2 = sc[None, :, None] * pts[:, ic, :] - pts[:, ia, :]
    normals = np.cross(e1, e2)
    return _support_minimum(pts, normals, kind, degree=2)


def _support_minimum(pts: np.ndarray, normals: np.ndarray, kind: NormKind,
                     degree: int) -> np.ndarray:
    """min over candidate normals of max_i |u . p_i| / dual_norm(u)."""
    m = pts.shape[1]
    scale = np.max(np.abs(pts), axis=(1, 2))
    # Normals are degree-1 (2-d) or degree-2 (3-d) in the point entries.
    floor = _DEGENERATE_REL * np.maximum(scale, 1e-300) ** degree
    duals = vector_norms(normals, dual_kind(kind))
    support = np.zeros(normals.shape[:2])
    for i in range(m):
        np.maximum(support,
                   np.abs(np.einsum("sca,sa->sc", normals, pts[:, i, :])),
                   out=support)
    ratios = np.where(duals > floor[:, None], support / np.where(
        duals > 0, duals, 1.0), np.inf)
    out = np.min(ratios, axis=1)
    return np.where(np.isfinite(out), out, 0.0)


def radius_profile(products: np.ndarray, xs: np.ndarray,
                   kind: NormKind, chunk: int = 8192) -> np.ndarray:
    """Inscribed radius of conv({±G x}) for each base point x.

    ``products`` is an (m, d, d) stack applied to every row of ``xs``.
    Matches inscribed_radius(reach points of x) exactly for d in {1, 2, 3}.
    """
    prods = np.asarray(products, dtype=float)
    pts_all = np.asarray(xs, dtype=float)
    d = prods.shape[-1]
    if d not in (1, 2, 3):
        raise UnsupportedDimensionError(
            f"exact radius profiles are available for d in {{1, 2, 3}}, got d={d}"
        )
    out = np.empty(pts_all.shape[0])
    for lo in range(0, pts_all.shape[0], chunk):
        block = pts_all[lo:lo + chunk]
        pts = np.einsum("mab,sb->sma", prods, block)
        if d == 1:
            out[lo:lo + chunk] = np.max(np.abs(pts[..., 0]), axis=1)
        elif d == 2:
            out[lo:lo + chunk] = _radius_values_2d(pts, kind)
        else:
            out[lo:lo + chunk] = _radius_values_3d(pts, kind)
    return out


# ---------------------------------------------------------------------------
# Deterministic nets on unit spheres


def kind_normalize(rows: np.ndarray, kind: NormKind) -> np.ndarray:
    v = np.asarray(rows, dtype=float)
    return v / vector_norms(v, kind)[..., None]


def circle_net(kind: NormKind, mesh: float) -> np.ndarray:
    """Net on the planar unit sphere with covering radius <= mesh / 2.

    The l2 circle is sampled by arc length; the l1 and linf spheres are
    polygons whose edges are walked with steps of at most ``mesh`` in the
    respective metric.
    """
    if mesh <= 0:
        raise ValueError("mesh must be positive")
    if kind is NormKind.L2:
        count = int(np.ceil(2.0 * np.pi / mesh))
        angles = np.arange(count) * (2.0 * np.pi / count)
        return np.stack([np.cos(angles), np.sin(angles)], axis=1)
    if kind is NormKind.L1:
        verts = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    else:
        verts = np.array([[1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0]])
    per_edge = int(np.ceil(2.0 / mesh))  # each polygon edge has length 2
    t = np.arange(per_edge) / per_edge
    chunks = []
    for k in range(4):
        a, b = verts[k], verts[(k + 1) % 4]
        chunks.append(a[None, :] * (1.0 - t[:, None]) + b[None, :] * t[:, None])
    return np.concatenate(chunks, axis=0)


def _icosahedron() -> tuple[np.ndarray, np.ndarray]:
    phi = (1.0 + np.sqrt(5.0)) / 2.0
    verts = np.array([
        [-1, phi, 0], [1, phi, 0], [-1, -phi, 0], [1, -phi, 0],
        [0, -1, phi], [0, 1, phi], [0, -1, -phi], [0, 1, -phi],
        [phi, 0, -1], [phi, 0, 1], [-phi, 0, -1], [-phi, 0, 1],
    ], dtype=float)
    verts /= np.linalg.norm(verts, axis=1)[:, None]
    faces = np.array([
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ], dtype=np.intp)
    return verts, faces


def _subdivide(verts: np.ndarray, faces: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = verts.shape[0]
    edges = np.concatenate([faces[:, [0, 1]], faces[:, [1, 2]],
                            faces[:, [2, 0]]], axis=0)
    edges = np.sort(edges, axis=1)
    keys = edges[:, 0] * n + edges[:, 1]
    uniq, inverse = np.unique(keys, return_inverse=True)
    mids = verts[uniq // n] + verts[uniq % n]
    mids /= np.linalg.norm(mids, axis=1)[:, None]
    mid_idx = n + inverse.reshape(3, -1)
    ab, bc, ca = mid_idx[0], mid_idx[1], mid_idx[2]
    new_faces = np.concatenate([
        np.stack([faces[:, 0], ab, ca], axis=1),
        np.stack([faces[:, 1], bc, ab], axis=1),
        np.stack([faces[:, 2], ca, bc], axis=1),
        np.stack([ab, bc, ca], axis=1),
    ], axis=0)
    return np.concatenate([verts, mids], axis=0), new_faces


def _covering_radius(verts: np.ndarray, faces: np.ndarray) -> float:
    """Geodesic covering radius of the vertex net: max face circumradius."""
    a, b, c = verts[faces[:, 0]], verts[faces[:, 1]], verts[faces[:, 2]]
    centers = np.cross(b - a, c - a)
    norms = np.linalg.norm(centers, axis=1)
    centers /= np.where(norms > 0, norms, 1.0)[:, None]
    flip = np.sum(centers * (a + b + c), axis=1) < 0
    centers[flip] *= -1.0
    cosr = np.clip(np.sum(centers * a, axis=1), -1.0, 1.0)
    return float(np.max(np.arccos(cosr)))


_MAX_ICOSPHERE_LEVEL = 9


def icosphere(mesh: float) -> np.ndarray:
    """Vertices of the coarsest icosphere with covering radius <= mesh."""
    if mesh <= 0:
        raise ValueError("mesh must be positive")
    verts, faces = _icosahedron()
    for _ in range(_MAX_ICOSPHERE_LEVEL + 1):
        if _covering_radius(verts, faces) <= mesh:
            return verts
        verts, faces = _subdivide(verts, faces)
    raise ValueError(f"mesh {mesh} too fine for the supported icosphere levels")


def _polyhedral_net(face_vertices: list[np.ndarray], mesh: float) -> np.ndarray:
    """Barycentric grids over triangular faces, deduplicated."""
    q = int(np.ceil(2.0 / mesh))
    i = np.arange(q + 1)
    ii, jj = np.meshgrid(i, i, indexing="ij")
    keep = ii + jj <= q
    bary = np.stack([ii[keep], jj[keep], q - ii[keep] - jj[keep]], axis=1) / q
    pieces = [bary @ tri for tri in face_vertices]
    return np.unique(np.concatenate(pieces, axis=0), axis=0)


def sphere_net(d: int, kind: NormKind, mesh: float) -> np.ndarray:
    """Deterministic net of the kind-unit sphere with covering radius <= mesh.

    The guarantee is in the kind metric itself: every point of the sphere
    lies within mesh of some net point.
    """
    if d == 1:
        return np.array([[1.0], [-1.0]])
    if d == 2:
        return circle_net(kind, mesh)
    if d == 3:
        if kind is NormKind.L2:
            return icosphere(mesh)
        if kind is NormKind.L1:
            # Octahedron surface; grid spacing 2/q per face has l1 step 2/q.
            faces = [np.diag(signs).astype(float)
                     for signs in ((1, 1, 1), (1, 1, -1), (1, -1, 1),
                                   (1, -1, -1), (-1, 1, 1), (-1, 1, -1),
                                   (-1, -1, 1), (-1, -1, -1))]
            return _polyhedral_net(faces, mesh)
        # Cube surface split into triangles per face.
        pieces = []
        for axis in range(3):
            for side in (1.0, -1.0):
                corners = []
                for s1 in (-1.0, 1.0):
                    for s2 in (-1.0, 1.0):
                        v = np.zeros(3)
                        v[axis] = side
                        v[(axis + 1) % 3] = s1
                        v[(axis + 2) % 3] = s2
                        corners.append(v)
                a, b, c, e = corners
                pieces.extend([np.stack([a, b, c]), np.stack([b, c, e])])
        return _polyhedral_net(pieces, mesh)
    raise UnsupportedDimensionError(
        f"deterministic sphere nets are available for d in {{1, 2, 3}}, got d={d}"
    )


def halton_directions(d: int, count: int) -> np.ndarray:
    """Deterministic quasi-uniform unit directions for sampled estimates."""
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    if d > len(primes):
        raise UnsupportedDimensionError("sampled directions support d <= 10")
    from scipy.stats import norm as _norm

    idx = np.arange(1, count + 1)
    cols = []
    for k in range(d):
        base = primes[k]
        x = np.zeros(count)
        denom = 1.0
        rem = idx.copy()
        while np.any(rem > 0):
            denom *= base
            x += (rem % base) / denom
            rem //= base
        cols.append(x)
    u = np.clip(np.stack(cols, axis=1), 1e-12, 1.0 - 1e-12)
    g = _norm.ppf(u)
    norms = np.linalg.norm(g, axis=1)
    keep = norms > 1e-9
    return g[keep] / norms[keep][:, None]


# ---------------------------------------------------------------------------
# Deterministic local refinement on a sphere


def _tangent_frame(x: np.ndarray) -> list[np.ndarray]:
    unit = x / np.linalg.norm(x)
    axis = int(np.argmin(np.abs(unit)))
    e = np.zeros_like(unit)
    e[axis] = 1.0
    t1 = e - np.dot(e, unit) * unit
    t1 /= np.linalg.norm(t1)
    if len(x) == 2:
        return [t1]
    t2 = np.cross(unit, t1)
    return [t1, t2]


def refine_minimum(value_fn, x0: np.ndarray, v0: float, kind: NormKind,
                   step: float, min_step: float = 1e-13,
                   max_rounds: int = 200) -> tuple[np.ndarray, float]:
    """Pattern search for a local minimum on the kind-unit sphere.

    value_fn maps an (s, d) block of unit vectors to (s,) values.  The step
    halves whenever no neighbor improves; fully deterministic.
    """
    x = np.asarray(x0, dtype=float)
    best = float(v0)
    h = float(step)
    dirs = _tangent_frame(x)
    if len(dirs) == 1:
        offsets = [dirs[0], -dirs[0]]
    else:
        offsets = []
        for k in range(8):
            ang = k * np.pi / 4.0
            offsets.append(np.cos(ang) * dirs[0] + np.sin(ang) * dirs[1])
    for _ in range(max_rounds):
        if h < min_step:
            break
        cand = kind_normalize(np.stack([x + h * o for o in offsets]), kind)
        vals = value_fn(cand)
        j = int(np.argmin(vals))
        if float(vals[j]) < best:
            x = cand[j]
            best = float(vals[j])
            dirs = _tangent_frame(x)
            if len(dirs) == 1:
                offsets = [dirs[0], -dirs[0]]
            else:
                offsets = []
                for k in range(8):
                    ang = k * np.pi / 4.0
                    offsets.append(np.cos(ang) * dirs[0] + np.sin(ang) * dirs[1])
        else:
            h *= 0.5
    return x, best
