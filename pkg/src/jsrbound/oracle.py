"""Brute-force reference implementations for cross-checking.

Everything here recomputes results from first principles with its own
product bookkeeping: levels of products are materialized list-by-list
(memory-heavy on purpose), norms come from direct column/row sums or a
full SVD, and eigenvalues from the dense solver.  Nothing is shared with
the streaming enumeration used by the main modules, so agreement between
the two routes is meaningful evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_WORD_BUDGET, MatrixSet, NormKind, Word
from .errors import BudgetExceededError


@dataclass(frozen=True, eq=False)
class OracleInterval:
    """Best lower/upper bounds over n = 1..n_max with witness words."""

    n_max: int
    kind: NormKind
    lower: float
    upper: float
    witness_lower: Word
    witness_upper: Word

    def to_dict(self) -> dict:
        return {
            "n_max": self.n_max,
            "kind": self.kind.value,
            "lower": self.lower,
            "upper": self.upper,
            "witness_lower": list(self.witness_lower),
            "witness_upper": list(self.witness_upper),
        }


def _norm_of(matrix: np.ndarray, kind: NormKind) -> float:
    if kind is NormKind.L1:
        return float(np.max(np.sum(np.abs(matrix), axis=0)))
    if kind is NormKind.LINF:
        return float(np.max(np.sum(np.abs(matrix), axis=1)))
    return float(np.max(np.linalg.svd(matrix, compute_uv=False)))


def _rho_of(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(matrix))))


def brute_force_interval(
    mset: MatrixSet,
    n_max: int,
    kind: NormKind,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> OracleInterval:
    """Exhaustive interval: materializes every product level in full."""
    if n_max < 1:
        raise ValueError("n_max must be a positive integer")
    total = sum(mset.r ** n for n in range(1, n_max + 1))
    if total > max_words:
        raise BudgetExceededError(
            f"brute force over n <= {n_max} requires {total} words, "
            f"budget is {max_words}",
            required=total,
            budget=max_words,
        )
    best_lower = -np.inf
    best_upper = np.inf
    witness_lower: Word = ()
    witness_upper: Word = ()
    level: list[tuple[Word, np.ndarray]] = [((), np.eye(mset.dim))]
    for n in range(1, n_max + 1):
        level = [
            (word + (t,), member @ prod)
            for word, prod in level
            for t, member in enumerate(mset.members, start=1)
        ]
        for word, prod in level:
            rho_root = _rho_of(prod) ** (1.0 / n)
            if rho_root > best_lower:
                best_lower = rho_root
                witness_lower = word
        norm_best = None
        norm_word: Word = ()
        for word, prod in level:
            value = _norm_of(prod, kind)
            if norm_best is None or value > norm_best:
                norm_best = value
                norm_word = word
        norm_root = norm_best ** (1.0 / n)
        if norm_root < best_upper:
            best_upper = norm_root
            witness_upper = norm_word
    return OracleInterval(
        n_max=n_max,
        kind=kind,
        lower=float(best_lower),
        upper=float(best_upper),
        witness_lower=witness_lower,
        witness_upper=witness_upper,
    )


def invariant_subspace_search_2d(mset: MatrixSet) -> np.ndarray | None:
    """A unit vector spanning a common invariant line of a planar set.

    Candidate lines are the real eigendirections of the first member that
    is not a multiple of the identity (any line is invariant under a
    scalar member).  Returns None when no common line exists.
    """
    if mset.dim != 2:
        raise ValueError("this search is specific to d = 2")

    def is_scalar(m: np.ndarray) -> bool:
        scale = float(np.max(np.abs(m))) or 1.0
        return np.max(np.abs(m - (np.trace(m) / 2.0) * np.eye(2))) \
            <= 1e-12 * scale

    def invariant_under_all(v: np.ndarray) -> bool:
        for m in mset.members:
            w = m @ v
            crossed = abs(w[0] * v[1] - w[1] * v[0])
            if crossed > 1e-9 * (1.0 + float(np.hypot(w[0], w[1]))):
                return False
        return True

    anchor = None
    for m in mset.members:
        if not is_scalar(m):
            anchor = m
            break
    if anchor is None:
        return np.array([1.0, 0.0])
    candidates = []
    for lam in np.linalg.eigvals(anchor):
        if abs(lam.imag) > 1e-9 * (1.0 + abs(lam)):
            continue
        shifted = anchor - lam.real * np.eye(2)
        _, _, vt = np.linalg.svd(shifted)
        candidates.append(vt[-1])
    for v in candidates:
        if invariant_under_all(v):
            return v / np.hypot(v[0], v[1])
    return None
