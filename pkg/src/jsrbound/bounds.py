"""Two-sided bounds on the joint spectral radius from finite products.

For any n, the largest spectral radius over length-n products raised to
1/n is a lower bound of the joint spectral radius, and the largest
operator norm raised to 1/n is an upper bound.  Scanning n = 1..n_max
and keeping the best of each side yields a shrinking enclosure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .core import (
    DEFAULT_WORD_BUDGET,
    MatrixSet,
    NormKind,
    Word,
    enumerate_products,
    max_over_products,
    operator_norms,
    spectral_radii,
    spectral_radius,
)
from .errors import BudgetExceededError, JsrError

DEFAULT_KRON_DIM_LIMIT = 4096


@dataclass(frozen=True, eq=False)
class BoundReport:
    """Per-step bounds plus the best enclosure seen so far.

    ``witness_lower`` and ``witness_upper`` are the words attaining the
    step-n spectral-radius and norm maxima (first in lexicographic order
    on ties).
    """

    n: int
    kind: NormKind
    lower_n: float
    upper_n: float
    best_lower: float
    best_upper: float
    witness_lower: Word
    witness_upper: Word

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind.value,
            "lower": self.lower_n,
            "upper": self.upper_n,
            "best_lower": self.best_lower,
            "best_upper": self.best_upper,
            "witness_lower": list(self.witness_lower),
            "witness_upper": list(self.witness_upper),
        }


def gelfand_upper(
    mset: MatrixSet,
    n: int,
    kind: NormKind,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> float:
    """Upper bound: largest norm over length-n products, n-th root."""
    [(norm_max, _)] = max_over_products(
        mset, n, [lambda s: operator_norms(s, kind)], max_words
    )
    return norm_max ** (1.0 / n)


def spectral_lower(
    mset: MatrixSet, n: int, max_words: int = DEFAULT_WORD_BUDGET
) -> float:
    """Lower bound: largest spectral radius over length-n products, n-th root."""
    [(rho_max, _)] = max_over_products(mset, n, [spectral_radii], max_words)
    return rho_max ** (1.0 / n)


def sandwich(
    mset: MatrixSet,
    n_max: int,
    kind: NormKind,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> list[BoundReport]:
    """Bound reports for n = 1..n_max, lower and upper in one pass per n.

    If the word budget or the overflow guard trips partway, the raised
    error carries the completed reports in its ``partial`` attribute.
    """
    if n_max < 1:
        raise ValueError("n_max must be a positive integer")
    reports: list[BoundReport] = []
    best_lower = -np.inf
    best_upper = np.inf
    for n in range(1, n_max + 1):
        try:
            (norm_max, w_upper), (rho_max, w_lower) = max_over_products(
                mset,
                n,
                [lambda s: operator_norms(s, kind), spectral_radii],
                max_words,
            )
        except JsrError as exc:
            exc.partial = list(reports)
            raise
        lower_n = rho_max ** (1.0 / n)
        upper_n = norm_max ** (1.0 / n)
        best_lower = max(best_lower, lower_n)
        best_upper = min(best_upper, upper_n)
        reports.append(
            BoundReport(
                n=n,
                kind=kind,
                lower_n=lower_n,
                upper_n=upper_n,
                best_lower=best_lower,
                best_upper=best_upper,
                witness_lower=w_lower,
                witness_upper=w_upper,
            )
        )
    return reports


def trace_estimate(
    mset: MatrixSet, n: int, max_words: int = DEFAULT_WORD_BUDGET
) -> float:
    """Largest |trace| over length-n products, n-th root.

    Heuristic: the trace maximum converges to the joint spectral radius
    only in the limit, so a finite n gives neither a lower nor an upper
    bound.  Callers must surface it as a flagged estimate, never as a
    certificate.
    """
    [(tr_max, _)] = max_over_products(
        mset,
        n,
        [lambda s: np.abs(np.trace(s, axis1=-2, axis2=-1))],
        max_words,
    )
    return tr_max ** (1.0 / n)


def kronecker_bounds(
    mset: MatrixSet,
    n: int,
    max_kron_dim: int = DEFAULT_KRON_DIM_LIMIT,
) -> tuple[float, float]:
    """Two-sided bounds from the sum of n-fold Kronecker powers.

    Valid for entrywise nonnegative members only.  With
    rho = spectral_radius(sum_i A_i^(kron n)),

        r^(-1/n) * rho^(1/n) <= joint spectral radius <= rho^(1/n),

    so the upper/lower ratio is exactly r^(1/n) by construction.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    for k, m in enumerate(mset.members, start=1):
        if np.min(m) < 0.0:
            i, j = np.argwhere(m < 0.0)[0]
            raise ValueError(
                f"Kronecker bounds need nonnegative entries; matrix {k} has "
                f"a negative entry at ({i}, {j})"
            )
    dim = mset.dim ** n
    if dim > max_kron_dim:
        raise BudgetExceededError(
            f"Kronecker power dimension {dim} exceeds the limit {max_kron_dim}",
            required=dim,
            budget=max_kron_dim,
        )
    total = np.zeros((dim, dim))
    for m in mset.members:
        total += reduce(np.kron, [m] * n)
    rho = spectral_radius(total)
    upper = rho ** (1.0 / n)
    lower = upper / mset.r ** (1.0 / n)
    return lower, upper


def zero_radius_test(
    mset: MatrixSet, max_words: int = DEFAULT_WORD_BUDGET
) -> bool:
    """True when the joint spectral radius is exactly zero.

    Zero radius is equivalent to every length-d product vanishing, with d
    the dimension.  Entries are compared against a tolerance scaled by the
    largest input magnitude; the scan stops at the first nonzero product.
    """
    tol = 1e-12 * (1.0 + mset.max_entry())
    for _, prod in enumerate_products(mset, mset.dim, max_words):
        if np.max(np.abs(prod)) > tol:
            return False
    return True
