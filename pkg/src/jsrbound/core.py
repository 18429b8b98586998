"""Matrix sets, norms, spectral radii and product enumeration.

A matrix set is a finite collection of real d x d matrices.  Everything in
this package reduces to scanning the products A_{i_n} ... A_{i_2} A_{i_1}
over index words (i_1, ..., i_n); the word lists the factor applied first
on the right, so word (1, 2) denotes the product A_2 A_1.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .errors import (
    BudgetExceededError,
    ConvergenceError,
    InputFormatError,
    OverflowRiskError,
)

# Default cap on the number of words enumerated in one call.
DEFAULT_WORD_BUDGET = 1 << 24

# Entry magnitude beyond which products are considered at risk of overflow.
OVERFLOW_LIMIT = 1e150

# Product stacks are materialized only below this many float entries;
# larger enumerations stream through fixed-size chunks instead.
_MATERIALIZE_ENTRY_LIMIT = 1 << 22
_STREAM_CHUNK = 8192

Word = tuple[int, ...]


class NormKind(enum.Enum):
    """Vector norm selector; operator norms are the induced ones."""

    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def from_name(cls, name: str) -> "NormKind":
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise InputFormatError(
                f"unknown norm {name!r}: expected one of l1, l2, linf"
            ) from None


def as_matrix(entries, *, dim: int | None = None) -> np.ndarray:
    """Validate and freeze a square real matrix as a float64 array."""
    a = np.array(entries, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputFormatError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise InputFormatError("matrix dimension must be at least 1")
    if dim is not None and a.shape[0] != dim:
        raise InputFormatError(
            f"expected a {dim}x{dim} matrix, got {a.shape[0]}x{a.shape[1]}"
        )
    if not np.all(np.isfinite(a)):
        i, j = np.argwhere(~np.isfinite(a))[0]
        raise InputFormatError(f"non-finite entry at position ({i}, {j})")
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class MatrixSet:
    """A finite set of real d x d matrices, kept in input order."""

    dim: int
    members: tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise InputFormatError("matrix dimension must be at least 1")
        if len(self.members) < 1:
            raise InputFormatError("a matrix set needs at least one member")
        frozen = []
        for k, m in enumerate(self.members):
            try:
                frozen.append(as_matrix(m, dim=self.dim))
            except InputFormatError as exc:
                raise InputFormatError(f"matrix {k + 1}: {exc}") from None
        object.__setattr__(self, "members", tuple(frozen))

    @classmethod
    def from_arrays(cls, matrices) -> "MatrixSet":
        mats = [np.asarray(m, dtype=float) for m in matrices]
        if not mats:
            raise InputFormatError("a matrix set needs at least one member")
        if mats[0].ndim != 2:
            raise InputFormatError("matrix members must be two-dimensional")
        return cls(dim=mats[0].shape[0], members=tuple(mats))

    @property
    def r(self) -> int:
        return len(self.members)

    def stacked(self) -> np.ndarray:
        """The members as one (r, d, d) array."""
        return np.stack(self.members)

    def scaled(self, factor: float) -> "MatrixSet":
        """The set with every member multiplied by ``factor``."""
        return MatrixSet(self.dim, tuple(m * factor for m in self.members))

    def max_entry(self) -> float:
        return max(float(np.max(np.abs(m))) for m in self.members)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "matrices": [m.tolist() for m in self.members]}


def parse_matrix_set(text: str) -> MatrixSet:
    """Parse the JSON input format ``{"dim": d, "matrices": [...]}``.

    Errors carry the location (matrix index, row) of the first offending
    entry.  Matrix indices in messages are 1-based.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InputFormatError("top-level value must be an object")
    if "dim" not in doc or "matrices" not in doc:
        raise InputFormatError('input must provide "dim" and "matrices"')
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputFormatError('"dim" must be a positive integer')
    raw = doc["matrices"]
    if not isinstance(raw, list) or len(raw) == 0:
        raise InputFormatError('"matrices" must be a non-empty list')
    members = []
    for k, mat in enumerate(raw, start=1):
        if not isinstance(mat, list) or len(mat) != dim:
            got = len(mat) if isinstance(mat, list) else type(mat).__name__
            raise InputFormatError(
                f"matrix {k}: ragged matrix: expected {dim} rows, got {got}"
            )
        rows = []
        for i, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != dim:
                got = len(row) if isinstance(row, list) else type(row).__name__
                raise InputFormatError(
                    f"matrix {k}, row {i}: expected {dim} entries, got {got}"
                )
            for j, v in enumerate(row):
                if isinstance(v, bool) or not isinstance(v, (int, float)):
                    raise InputFormatError(
                        f"matrix {k}, entry ({i}, {j}): not a number"
                    )
                if not np.isfinite(v):
                    raise InputFormatError(
                        f"matrix {k}, entry ({i}, {j}): non-finite value"
                    )
            rows.append([float(v) for v in row])
        members.append(np.array(rows))
    return MatrixSet(dim=dim, members=tuple(members))


def load_matrix_set(path) -> MatrixSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix_set(fh.read())


# ---------------------------------------------------------------------------
# Norms and spectral radii


def vector_norm(x, kind: NormKind) -> float:
    v = np.asarray(x, dtype=float)
    if kind is NormKind.L1:
        return float(np.sum(np.abs(v)))
    if kind is NormKind.L2:
        return float(np.sqrt(np.sum(v * v)))
    return float(np.max(np.abs(v)))


def operator_norms(stack: np.ndarray, kind: NormKind) -> np.ndarray:
    """Induced operator norms of a (..., d, d) stack of matrices."""
    s = np.asarray(stack, dtype=float)
    if kind is NormKind.L1:
        return np.max(np.sum(np.abs(s), axis=-2), axis=-1)
    if kind is NormKind.LINF:
        return np.max(np.sum(np.abs(s), axis=-1), axis=-1)
    # Largest singular value via the symmetric eigenproblem on A^T A.
    # Matrices are normalized by their largest entry first so squaring
    # cannot overflow even near the product magnitude limit.
    scale = np.max(np.abs(s), axis=(-2, -1))
    safe = np.where(scale > 0.0, scale, 1.0)
    hat = s / safe[..., None, None]
    gram = np.einsum("...ba,...bc->...ac", hat, hat)
    try:
        eigs = np.linalg.eigvalsh(gram)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"singular value iteration failed: {exc}") from None
    top = np.clip(eigs[..., -1], 0.0, None)
    return np.where(scale > 0.0, safe * np.sqrt(top), 0.0)


def operator_norm(matrix, kind: NormKind) -> float:
    """Operator norm of a single matrix induced by the chosen vector norm."""
    a = np.asarray(matrix, dtype=float)
    return float(operator_norms(a[None, :, :], kind)[0])


def spectral_radii(stack: np.ndarray) -> np.ndarray:
    """Spectral radii of a (..., d, d) stack.

    Dimensions 1 and 2 use the closed form from the characteristic
    polynomial; larger matrices go through the QR eigensolver.  Entries are
    pre-normalized by the largest magnitude so the discriminant cannot
    overflow.
    """
    s = np.asarray(stack, dtype=float)
    d = s.shape[-1]
    scale = np.max(np.abs(s), axis=(-2, -1))
    safe = np.where(scale > 0.0, scale, 1.0)
    hat = s / safe[..., None, None]
    if d == 1:
        return scale * np.abs(hat[..., 0, 0])
    if d == 2:
        tr = hat[..., 0, 0] + hat[..., 1, 1]
        det = hat[..., 0, 0] * hat[..., 1, 1] - hat[..., 0, 1] * hat[..., 1, 0]
        disc = tr * tr - 4.0 * det
        real = (np.abs(tr) + np.sqrt(np.clip(disc, 0.0, None))) / 2.0
        complex_pair = np.sqrt(np.clip(det, 0.0, None))
        return scale * np.where(disc >= 0.0, real, complex_pair)
    try:
        eigs = np.linalg.eigvals(hat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigenvalue iteration failed: {exc}") from None
    return scale * np.max(np.abs(eigs), axis=-1)


def spectral_radius(matrix) -> float:
    """Largest eigenvalue magnitude of a single square matrix."""
    a = np.asarray(matrix, dtype=float)
    return float(spectral_radii(a[None, :, :])[0])


# ---------------------------------------------------------------------------
# Product enumeration


def word_from_index(index: int, r: int, n: int) -> Word:
    """Decode the lexicographic position of a length-n word over {1..r}."""
    digits = []
    for _ in range(n):
        digits.append(index % r + 1)
        index //= r
    return tuple(reversed(digits))


def product_of_word(mset: MatrixSet, word: Word) -> np.ndarray:
    """Multiply out a word directly: A_{i_n} ... A_{i_1}."""
    out = np.eye(mset.dim)
    for i in word:
        out = mset.members[i - 1] @ out
    return out


def _check_word_budget(mset: MatrixSet, n: int, max_words: int) -> int:
    if n < 1:
        raise ValueError("product length n must be a positive integer")
    required = mset.r ** n
    if required > max_words:
        raise BudgetExceededError(
            f"enumerating length-{n} products requires {required} words, "
            f"budget is {max_words}",
            required=required,
            budget=max_words,
        )
    return required


def _check_overflow(block: np.ndarray) -> None:
    if np.max(np.abs(block)) > OVERFLOW_LIMIT:
        raise OverflowRiskError(
            "product entries exceed the safe magnitude limit (overflow risk); "
            "consider pre-scaling the set by 1 / matrix_set_norm(set, 1, kind)"
        )


def enumerate_products(
    mset: MatrixSet, n: int, max_words: int = DEFAULT_WORD_BUDGET
) -> Iterator[tuple[Word, np.ndarray]]:
    """Yield (word, product) for every length-n word in lexicographic order.

    Depth-first with the running prefix product carried down, so memory
    stays at O(n d^2) regardless of r^n.
    """
    _check_word_budget(mset, n, max_words)
    members = mset.members
    word = [0] * n

    def walk(depth: int, prefix: np.ndarray):
        _check_overflow(prefix)
        if depth == n:
            yield tuple(word), prefix
            return
        for t, m in enumerate(members, start=1):
            word[depth] = t
            yield from walk(depth + 1, m @ prefix)

    yield from walk(0, np.eye(mset.dim))


def product_stack(
    mset: MatrixSet, n: int, max_words: int = DEFAULT_WORD_BUDGET
) -> np.ndarray:
    """All length-n products as an (r^n, d, d) array in word order."""
    required = _check_word_budget(mset, n, max_words)
    d = mset.dim
    if required * d * d > _MATERIALIZE_ENTRY_LIMIT:
        raise BudgetExceededError(
            f"materializing {required} products of dimension {d} exceeds the "
            "in-memory limit; use enumerate_products instead",
            required=required,
            budget=_MATERIALIZE_ENTRY_LIMIT // (d * d),
        )
    mats = mset.stacked()
    stack = mats.copy()
    for _ in range(n - 1):
        # Appending index t to word j lands at position j * r + t.
        stack = np.einsum("tab,jbc->jtac", mats, stack).reshape(-1, d, d)
        _check_overflow(stack)
    _check_overflow(stack)
    return stack


def _product_chunks(
    mset: MatrixSet, n: int, max_words: int
) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (start_index, stack_chunk) pairs covering all length-n words."""
    required = _check_word_budget(mset, n, max_words)
    d = mset.dim
    if required * d * d <= _MATERIALIZE_ENTRY_LIMIT:
        yield 0, product_stack(mset, n, max_words)
        return
    buf: list[np.ndarray] = []
    start = 0
    for _, prod in enumerate_products(mset, n, max_words):
        buf.append(prod)
        if len(buf) == _STREAM_CHUNK:
            yield start, np.stack(buf)
            start += len(buf)
            buf = []
    if buf:
        yield start, np.stack(buf)


def max_over_products(
    mset: MatrixSet,
    n: int,
    metrics: list[Callable[[np.ndarray], np.ndarray]],
    max_words: int = DEFAULT_WORD_BUDGET,
) -> list[tuple[float, Word]]:
    """Maximize several per-product metrics in one enumeration pass.

    Returns (value, witness word) per metric; ties keep the first word in
    lexicographic order.
    """
    best: list[tuple[float, int]] = [(-np.inf, -1)] * len(metrics)
    for start, chunk in _product_chunks(mset, n, max_words):
        for k, fn in enumerate(metrics):
            vals = np.asarray(fn(chunk), dtype=float)
            j = int(np.argmax(vals))
            if float(vals[j]) > best[k][0]:
                best[k] = (float(vals[j]), start + j)
    return [
        (value, word_from_index(index, mset.r, n)) for value, index in best
    ]


def matrix_set_norm(
    mset: MatrixSet,
    n: int,
    kind: NormKind,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> float:
    """Largest operator norm over all length-n products."""
    value, _ = matrix_set_norm_witness(mset, n, kind, max_words)
    return value


def matrix_set_norm_witness(
    mset: MatrixSet,
    n: int,
    kind: NormKind,
    max_words: int = DEFAULT_WORD_BUDGET,
) -> tuple[float, Word]:
    """Largest operator norm over length-n products plus its witness word."""
    [(value, word)] = max_over_products(
        mset, n, [lambda s: operator_norms(s, kind)], max_words
    )
    return value, word
