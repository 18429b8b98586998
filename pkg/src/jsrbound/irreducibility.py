"""Irreducibility of matrix sets and its quantitative measure.

A set is irreducible when its members share no proper nonzero invariant
subspace.  The quantitative side measures, for each unit vector x, how
large a norm ball fits inside the symmetrized convex hull of the points
G x, where G ranges over all products of at most p members (the identity
included).  The infimum of that radius over the unit sphere is positive
exactly when the set is irreducible, provided p >= d - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_WORD_BUDGET,
    MatrixSet,
    NormKind,
    Word,
    operator_norm,
)
from .errors import BudgetExceededError, UnsupportedDimensionError
from .geometry import (
    halton_directions,
    inscribed_radius,
    kind_normalize,
    radius_profile,
    refine_minimum,
    sphere_net,
    support_radius_upper,
    vector_norms,
)

_POINT_DEDUP_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ReachSet:
    """Points reachable from x by products of at most p members, symmetrized."""

    x: np.ndarray
    p: int
    points: np.ndarray


@dataclass(frozen=True, eq=False)
class ChiEstimate:
    """Sampled irreducibility measure plus its certified lower bound.

    ``sampled_inf`` is the smallest hull radius found on the sphere net
    (after deterministic local refinement), hence always an upper bound of
    the true infimum.  ``certified_lower`` subtracts the Lipschitz slack
    L * mesh and is a rigorous lower bound; 0 means the mesh was too
    coarse to certify positivity, not an error.
    """

    p: int
    kind: NormKind
    sampled_inf: float
    certified_lower: float
    lipschitz: float
    mesh: float
    argmin: np.ndarray
    samples: int

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "kind": self.kind.value,
            "sampled_inf": self.sampled_inf,
            "certified_lower": self.certified_lower,
            "lipschitz": self.lipschitz,
            "mesh": self.mesh,
            "argmin": [float(v) for v in self.argmin],
            "samples": self.samples,
        }


def reach_products(
    mset: MatrixSet, p: int, max_words: int = DEFAULT_WORD_BUDGET
) -> np.ndarray:
    """All distinct products of 0..p members as an (m, d, d) stack.

    Length 0 contributes the identity.  Duplicates are dropped at a small
    relative tolerance; they contribute nothing to the hulls downstream.
    """
    if p < 0:
        raise ValueError("p must be a non-negative integer")
    total = sum(mset.r ** k for k in range(p + 1))
    if total > max_words:
        raise BudgetExceededError(
            f"products of length <= {p} require {total} words, "
            f"budget is {max_words}",
            required=total,
            budget=max_words,
        )
    d = mset.dim
    kept: list[np.ndarray] = [np.eye(d)]
    frontier: list[np.ndarray] = [np.eye(d)]
    for _ in range(p):
        fresh: list[np.ndarray] = []
        for base in frontier:
            for m in mset.members:
                cand = m @ base
                tol = _POINT_DEDUP_TOL * (1.0 + float(np.max(np.abs(cand))))
                if all(np.max(np.abs(cand - old)) > tol for old in kept):
                    kept.append(cand)
                    fresh.append(cand)
        frontier = fresh
        if not frontier:
            break
    return np.stack(kept)


def reach_set(
    mset: MatrixSet, p: int, x, max_words: int = DEFAULT_WORD_BUDGET
) -> ReachSet:
    """The symmetrized reach points {±G x} with duplicates removed."""
    base = np.asarray(x, dtype=float)
    if base.shape != (mset.dim,):
        raise ValueError(f"x must be a vector of length {mset.dim}")
    prods = reach_products(mset, p, max_words)
    raw = prods @ base
    raw = np.concatenate([raw, -raw], axis=0)
    kept: list[np.ndarray] = []
    for pt in raw:
        tol = _POINT_DEDUP_TOL * (1.0 + float(np.max(np.abs(pt))))
        if all(np.max(np.abs(pt - old)) > tol for old in kept):
            kept.append(pt)
    return ReachSet(x=base, p=p, points=np.stack(kept))


def sphere_profile(
    mset: MatrixSet,
    p: int,
    kind: NormKind,
    mesh: float,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> tuple[np.ndarray, np.ndarray]:
    """Net points of the unit sphere and the hull radius at each of them."""
    prods = reach_products(mset, p, max_words)
    xs = sphere_net(mset.dim, kind, mesh)
    return xs, radius_profile(prods, xs, kind)


def _select_starts(xs: np.ndarray, vals: np.ndarray, kind: NormKind,
                   spacing: float, limit: int = 8) -> list[int]:
    """Lowest-value net points, greedily thinned to pairwise spacing."""
    order = np.argsort(vals, kind="stable")
    chosen: list[int] = []
    for idx in order:
        if len(chosen) >= limit:
            break
        if all(vector_norms(xs[idx] - xs[j], kind) >= spacing for j in chosen):
            chosen.append(int(idx))
    return chosen


def chi_measure(
    mset: MatrixSet,
    p: int,
    kind: NormKind,
    mesh: float,
    *,
    refine: bool = True,
    max_words: int = DEFAULT_WORD_BUDGET,
    sampling_fallback: bool = False,
) -> ChiEstimate:
    """Estimate the irreducibility measure over the kind-unit sphere.

    The sphere net has covering radius at most ``mesh`` in the kind
    metric, and the radius function is Lipschitz with constant at most
    max_G ||G||; the reported constant doubles it for slack, giving

        certified_lower = max(0, sampled_inf - lipschitz * mesh).

    Local refinement only lowers sampled_inf by evaluating the radius at
    genuine sphere points, so both bounds stay valid.  For d >= 4 there is
    no exact hull; ``sampling_fallback=True`` switches to a sampled upper
    estimate with certified_lower pinned at 0.
    """
    if mesh <= 0:
        raise ValueError("mesh must be positive")
    d = mset.dim
    prods = reach_products(mset, p, max_words)
    lipschitz = 2.0 * max(operator_norm(g, kind) for g in prods)
    if d > 3:
        if not sampling_fallback:
            raise UnsupportedDimensionError(
                f"exact hulls are available for d in {{1, 2, 3}}, got d={d}; "
                "pass sampling_fallback=True for a non-certified upper estimate"
            )
        return _chi_sampled_upper(mset, prods, p, kind, mesh)
    xs = sphere_net(d, kind, mesh)
    vals = radius_profile(prods, xs, kind)
    best_idx = int(np.argmin(vals))
    sampled = float(vals[best_idx])
    argmin = xs[best_idx]
    if refine and d > 1:
        def value_fn(block):
            return radius_profile(prods, block, kind)

        for idx in _select_starts(xs, vals, kind, spacing=4.0 * mesh):
            x_ref, v_ref = refine_minimum(
                value_fn, xs[idx], float(vals[idx]), kind, step=mesh
            )
            if v_ref < sampled:
                sampled = v_ref
                argmin = x_ref
    certified = max(0.0, sampled - lipschitz * mesh)
    return ChiEstimate(
        p=p,
        kind=kind,
        sampled_inf=sampled,
        certified_lower=certified,
        lipschitz=lipschitz,
        mesh=mesh,
        argmin=argmin,
        samples=xs.shape[0],
    )


def _chi_sampled_upper(mset: MatrixSet, prods: np.ndarray, p: int,
                       kind: NormKind, mesh: float) -> ChiEstimate:
    """Sampled, non-certified upper estimate for d >= 4."""
    count = max(64, int(np.ceil(2.0 * np.pi / mesh)) * 10)
    xs = kind_normalize(halton_directions(mset.dim, count), kind)
    dirs = halton_directions(mset.dim, count)
    best = np.inf
    argmin = xs[0]
    for x in xs:
        pts = prods @ x
        pts = np.concatenate([pts, -pts], axis=0)
        val = support_radius_upper(pts, kind, dirs)
        if val < best:
            best = val
            argmin = x
    return ChiEstimate(
        p=p,
        kind=kind,
        sampled_inf=float(best),
        certified_lower=0.0,
        lipschitz=2.0 * max(operator_norm(g, kind) for g in prods),
        mesh=mesh,
        argmin=argmin,
        samples=xs.shape[0],
    )


# ---------------------------------------------------------------------------
# Algebraic irreducibility


@dataclass(frozen=True)
class BurnsideReport:
    """Span dimension of the generated algebra and its verdict.

    ``status`` is "irreducible" or "reducible" when the verdict is exact,
    which covers d <= 3: full span forces irreducibility in any dimension;
    for d = 2 a deficient span is settled by searching for a common real
    eigendirection, and for d = 3 a proper complex invariant subspace W
    always yields a real one through W + conj(W) or W ∩ conj(W).  For
    d >= 4 a deficient span is reported as "complex-reducible" and the
    boolean is a conservative False.
    """

    irreducible: bool
    rank: int
    status: str


def _common_real_eigendirection_2d(mset: MatrixSet) -> np.ndarray | None:
    """A direction spanning a common invariant line, or None."""
    base = None
    for m in mset.members:
        scale = float(np.max(np.abs(m))) or 1.0
        if np.max(np.abs(m - (np.trace(m) / 2.0) * np.eye(2))) > 1e-12 * scale:
            base = m
            break
    if base is None:
        # Every member is a multiple of the identity: any line works.
        return np.array([1.0, 0.0])
    eigs = np.linalg.eigvals(base)
    candidates = []
    for lam in eigs:
        if abs(lam.imag) > 1e-9 * (1.0 + abs(lam)):
            continue
        shifted = base - lam.real * np.eye(2)
        _, _, vt = np.linalg.svd(shifted)
        candidates.append(vt[-1])
    for v in candidates:
        ok = True
        for m in mset.members:
            w = m @ v
            crossed = abs(w[0] * v[1] - w[1] * v[0])
            if crossed > 1e-9 * (1.0 + float(np.linalg.norm(w))):
                ok = False
                break
        if ok:
            return v
    return None


def burnside_detail(mset: MatrixSet) -> BurnsideReport:
    """Rank of the span of all products of length 0..d^2, with verdict."""
    d = mset.dim
    if d > 8:
        raise UnsupportedDimensionError(
            f"the span test is limited to d <= 8, got d={d}"
        )
    dd = d * d
    basis = np.zeros((0, dd))
    rank = 0

    def try_add(mat: np.ndarray) -> bool:
        nonlocal basis, rank
        v = mat.reshape(-1)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            return False
        res = v - basis.T @ (basis @ v) if rank else v.copy()
        # One re-orthogonalization pass keeps the basis numerically tight.
        if rank:
            res = res - basis.T @ (basis @ res)
        rnorm = float(np.linalg.norm(res))
        if rnorm <= 1e-10 * norm:
            return False
        basis = np.vstack([basis, res / rnorm])
        rank += 1
        return True

    frontier = [np.eye(d)]
    try_add(np.eye(d))
    for _ in range(dd):
        if rank == dd or not frontier:
            break
        fresh = []
        for base in frontier:
            for m in mset.members:
                cand = m @ base
                if try_add(cand):
                    fresh.append(cand)
        frontier = fresh
    if rank == dd:
        return BurnsideReport(irreducible=True, rank=rank, status="irreducible")
    if d == 2:
        if _common_real_eigendirection_2d(mset) is None:
            return BurnsideReport(irreducible=True, rank=rank,
                                  status="irreducible")
        return BurnsideReport(irreducible=False, rank=rank, status="reducible")
    if d == 3:
        return BurnsideReport(irreducible=False, rank=rank, status="reducible")
    return BurnsideReport(irreducible=False, rank=rank,
                          status="complex-reducible")


def burnside_irreducible(mset: MatrixSet) -> bool:
    """True when the members admit no proper nonzero invariant subspace.

    Exact for d <= 3; for d >= 4 complex-reducible sets are conservatively
    reported as reducible (see BurnsideReport).
    """
    return burnside_detail(mset).irreducible


@dataclass(frozen=True, eq=False)
class CrosscheckReport:
    """Agreement between the algebraic test and the sampled measure."""

    irreducible: bool
    rank: int
    status: str
    chi: ChiEstimate
    agreement: str

    def to_dict(self) -> dict:
        return {
            "irreducible": self.irreducible,
            "rank": self.rank,
            "status": self.status,
            "chi": self.chi.to_dict(),
            "agreement": self.agreement,
        }


def lemma1_crosscheck(
    mset: MatrixSet,
    p: int,
    kind: NormKind,
    mesh: float,
    tolerance: float = 1e-6,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> CrosscheckReport:
    """Compare the span test against the sampled measure.

    For p >= d - 1 the measure is positive exactly on irreducible sets, so
    the two routes must agree: "consistent" when they do with a positive
    certificate (or a near-zero sample on reducible sets), "inconclusive"
    when the mesh was too coarse to certify, "inconsistent" otherwise.
    """
    detail = burnside_detail(mset)
    chi = chi_measure(mset, p, kind, mesh, max_words=max_words)
    if detail.irreducible:
        if chi.sampled_inf > tolerance and chi.certified_lower > 0.0:
            agreement = "consistent"
        elif chi.certified_lower == 0.0 and chi.sampled_inf > 0.0:
            agreement = "inconclusive"
        else:
            agreement = "inconsistent"
    else:
        if chi.sampled_inf <= tolerance:
            agreement = "consistent"
        elif chi.certified_lower == 0.0:
            agreement = "inconclusive"
        else:
            agreement = "inconsistent"
    return CrosscheckReport(
        irreducible=detail.irreducible,
        rank=detail.rank,
        status=detail.status,
        chi=chi,
        agreement=agreement,
    )


__all__ = [
    "ReachSet",
    "ChiEstimate",
    "BurnsideReport",
    "CrosscheckReport",
    "reach_products",
    "reach_set",
    "sphere_profile",
    "chi_measure",
    "burnside_detail",
    "burnside_irreducible",
    "lemma1_crosscheck",
    "inscribed_radius",
]
