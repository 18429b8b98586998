"""A-priori accuracy certificates for the norm-based upper bound.

An irreducible set with measure chi admits the two-sided enclosure

    nu^(-1/n) * ||set^n||^(1/n)  <=  rho  <=  ||set^n||^(1/n),

where nu = max(1, ||set||^p) / chi uses any certified lower bound of the
measure.  The relative width nu^(1/n) is known before enumerating a
single product, which makes step planning possible: pick the smallest n
whose width is below the requested accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_WORD_BUDGET,
    MatrixSet,
    NormKind,
    matrix_set_norm,
    operator_norm,
)
from .errors import NoCertificateError, UnsupportedDimensionError
from .geometry import icosphere

_EUCLID = NormKind.L2


@dataclass(frozen=True, eq=False)
class CertifiedInterval:
    """A rigorous enclosure of the joint spectral radius."""

    n: int
    p: int
    kind: NormKind
    nu_p: float
    lower: float
    upper: float
    ratio: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "kind": self.kind.value,
            "nu_p": self.nu_p,
            "lower": self.lower,
            "upper": self.upper,
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class StepPlan:
    """Smallest step count meeting a relative-accuracy target."""

    n: int
    products_required: int | None
    fits_budget: bool | None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "products_required": self.products_required,
            "fits_budget": self.fits_budget,
        }


@dataclass(frozen=True)
class GammaEstimate:
    """Subspace-escape lower bound on the irreducibility constant.

    ``p_values[k-1]`` estimates how far the members push some vector out
    of the worst k-dimensional subspace; the product over k divided by a
    power of the set norm bounds the constant from below.  The subspace
    infimum is netted, so the estimate is heuristic unless the planar
    certified mode subtracted the Lipschitz slack.
    """

    gamma_lower: float
    p_values: tuple[float, ...]
    heuristic: bool

    def to_dict(self) -> dict:
        return {
            "gamma_lower": self.gamma_lower,
            "p_values": list(self.p_values),
            "heuristic": self.heuristic,
        }


def nu_p(
    mset: MatrixSet,
    p: int,
    kind: NormKind,
    chi_lower: float,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> float:
    """Certificate constant max(1, ||set||^p) / chi_lower.

    ``chi_lower`` must be a positive certified lower bound of the measure
    at this p; the accuracy guarantee needs p >= d - 1.
    """
    if p < mset.dim - 1:
        raise ValueError(
            f"the certificate needs p >= d - 1 = {mset.dim - 1}, got p={p}"
        )
    if chi_lower <= 0.0:
        raise NoCertificateError(
            "no certificate: irreducibility is not established "
            "(chi lower bound is not positive; try a finer mesh)"
        )
    set_norm = matrix_set_norm(mset, 1, kind, max_words)
    return max(1.0, set_norm ** p) / chi_lower


def eta_p(mset: MatrixSet, p: int, rho_estimate: float,
          chi_lower: float) -> float:
    """Diagnostic constant max(1, rho^p) / chi_lower.

    Sharper than nu_p but needs the unknown radius itself, so it only
    serves to gauge how conservative the computable certificate is.
    """
    if p < mset.dim - 1:
        raise ValueError(
            f"the certificate needs p >= d - 1 = {mset.dim - 1}, got p={p}"
        )
    if rho_estimate <= 0.0:
        raise ValueError("rho_estimate must be positive")
    if chi_lower <= 0.0:
        raise NoCertificateError(
            "no certificate: irreducibility is not established "
            "(chi lower bound is not positive; try a finer mesh)"
        )
    return max(1.0, rho_estimate ** p) / chi_lower


def certified_interval(
    mset: MatrixSet,
    n: int,
    p: int,
    kind: NormKind,
    chi_lower: float,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> CertifiedInterval:
    """Two-sided enclosure from the length-n norm and the certificate."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    nu = nu_p(mset, p, kind, chi_lower, max_words)
    upper = matrix_set_norm(mset, n, kind, max_words) ** (1.0 / n)
    ratio = nu ** (1.0 / n)
    return CertifiedInterval(
        n=n,
        p=p,
        kind=kind,
        nu_p=nu,
        lower=upper / ratio,
        upper=upper,
        ratio=ratio,
    )


def plan_steps(
    nu: float,
    epsilon: float,
    *,
    r: int | None = None,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> StepPlan:
    """Smallest n with nu^(1/n) <= 1 + epsilon.

    When the member count r is supplied, the plan also reports whether
    r^n products fit the enumeration budget.
    """
    if nu <= 1.0:
        raise ValueError("nu must exceed 1")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    n = max(1, math.ceil(math.log(nu) / math.log1p(epsilon)))
    # Float rounding can land one step off in either direction.
    while nu ** (1.0 / n) > 1.0 + epsilon:
        n += 1
    while n > 1 and nu ** (1.0 / (n - 1)) <= 1.0 + epsilon:
        n -= 1
    required = None
    fits = None
    if r is not None:
        if r < 1:
            raise ValueError("r must be a positive integer")
        required = r ** n
        fits = required <= max_words
    return StepPlan(n=n, products_required=required, fits_budget=fits)


# ---------------------------------------------------------------------------
# Subspace-escape estimate (Euclidean geometry, d <= 3)


def _line_escape(mset: MatrixSet, dirs: np.ndarray) -> np.ndarray:
    """max_i dist(A_i u, span u) for each unit direction u."""
    stack = mset.stacked()
    imgs = np.einsum("rab,sb->sra", stack, dirs)
    comp = np.einsum("sra,sa->sr", imgs, dirs)
    resid = imgs - comp[:, :, None] * dirs[:, None, :]
    return np.max(np.linalg.norm(resid, axis=2), axis=1)


def _plane_escape(mset: MatrixSet, normals: np.ndarray) -> np.ndarray:
    """sup over unit x in the plane of max_i dist(A_i x, plane).

    For the plane with unit normal w the supremum has the closed form
    max_i || proj_(w-perp) (A_i^T w) ||.
    """
    stack = mset.stacked()
    pulled = np.einsum("rba,sb->sra", stack, normals)
    comp = np.einsum("sra,sa->sr", pulled, normals)
    resid = pulled - comp[:, :, None] * normals[:, None, :]
    return np.max(np.linalg.norm(resid, axis=2), axis=1)


def protasov_gamma(
    mset: MatrixSet,
    rho_upper: float | None = None,
    samples: int = 2000,
) -> GammaEstimate:
    """Netted lower estimate of the irreducibility constant (d <= 3).

    The denominator uses 2 * ||set|| unless a tighter upper bound of the
    radius is supplied.  In the plane the netted infimum over lines is
    made rigorous by a Lipschitz subtraction; in 3-d both the line and
    plane nets are reported as-is, hence heuristic.
    """
    d = mset.dim
    if d < 2 or d > 3:
        raise UnsupportedDimensionError(
            f"the subspace-escape estimate supports d in {{2, 3}}, got d={d}"
        )
    if samples < 8:
        raise ValueError("samples must be at least 8")
    set_norm = matrix_set_norm(mset, 1, _EUCLID)
    denominator = (2.0 * set_norm if rho_upper is None
                   else rho_upper + set_norm)
    if denominator <= 0.0:
        raise NoCertificateError("the set norm must be positive")
    member_norm = max(operator_norm(m, _EUCLID) for m in mset.members)
    if d == 2:
        step = np.pi / samples
        angles = np.arange(samples) * step
        dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        net_min = float(np.min(_line_escape(mset, dirs)))
        # The escape value is Lipschitz in the direction with constant
        # at most 3 * max ||A_i||; subtracting the slack certifies it.
        p1 = max(0.0, net_min - 3.0 * member_norm * step)
        p_values = (p1,)
        heuristic = False
    else:
        verts = _sphere_for_samples(samples)
        p1 = float(np.min(_line_escape(mset, verts)))
        p2 = float(np.min(_plane_escape(mset, verts)))
        p_values = (p1, p2)
        heuristic = True
    gamma = float(np.prod(p_values)) / denominator ** (d - 1)
    return GammaEstimate(
        gamma_lower=max(0.0, gamma),
        p_values=p_values,
        heuristic=heuristic,
    )


def _sphere_for_samples(samples: int) -> np.ndarray:
    """Icosphere vertices, refined until at least ``samples`` of them."""
    mesh = 1.2
    verts = icosphere(mesh)
    while verts.shape[0] < samples:
        mesh /= 2.0
        verts = icosphere(mesh)
    return verts
