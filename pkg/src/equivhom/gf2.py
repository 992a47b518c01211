"""Dense bit-packed linear algebra over the two-element field.

Rows are packed 64 columns per ``uint64`` word. The elimination kernels
come from the compiled ``_gf2_ext`` module when it was built, otherwise
from the numpy fallback; set ``EQUIVHOM_PURE_PYTHON=1`` to force the
fallback.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _gf2_fallback

if os.environ.get("EQUIVHOM_PURE_PYTHON"):
    _kernel = _gf2_fallback
else:
    try:
        from . import _gf2_ext as _kernel  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _kernel = _gf2_fallback

BACKEND = "compiled" if _kernel is not _gf2_fallback else "numpy"


def _nwords(ncols: int) -> int:
    return max(1, (ncols + 63) // 64)


def pack(dense: np.ndarray) -> np.ndarray:
    """Pack a 0/1 array of shape (rows, cols) into uint64 words."""
    dense = np.asarray(dense, dtype=np.uint8) & 1
    rows, cols = dense.shape
    nw = _nwords(cols)
    padded = np.zeros((rows, nw * 64), dtype=np.uint8)
    padded[:, :cols] = dense
    packed = np.packbits(padded, axis=1, bitorder="little")
    return np.ascontiguousarray(packed.view("<u8").astype(np.uint64))


def unpack(words: np.ndarray, ncols: int) -> np.ndarray:
    """Inverse of :func:`pack`; returns a uint8 array of shape (rows, ncols)."""
    rows = words.shape[0]
    if rows == 0:
        return np.zeros((0, ncols), dtype=np.uint8)
    as_bytes = np.ascontiguousarray(words.astype("<u8")).view(np.uint8).reshape(rows, -1)
    bits = np.unpackbits(as_bytes, axis=1, bitorder="little")
    return bits[:, :ncols]


class BitMatrix:
    """Immutable ``rows x cols`` matrix over GF(2).

    Addition is XOR, ``@`` is the matrix product. Equality compares
    entries.
    """

    __slots__ = ("rows", "cols", "_words")

    def __init__(self, rows: int, cols: int, words: np.ndarray | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        if words is None:
            words = np.zeros((self.rows, _nwords(self.cols)), dtype=np.uint64)
        words = np.ascontiguousarray(words, dtype=np.uint64)
        if words.shape != (self.rows, _nwords(self.cols)):
            raise ValueError(f"word array shape {words.shape} does not fit {rows}x{cols}")
        words.flags.writeable = False
        self._words = words

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_dense(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> "BitMatrix":
        arr = np.asarray(dense, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("expected a 2-d array")
        return cls(arr.shape[0], arr.shape[1], pack(arr & 1))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "BitMatrix":
        """Build from (row, col) positions; repeated positions cancel."""
        dense = np.zeros((rows, cols), dtype=np.uint8)
        for i, j in entries:
            dense[i, j] ^= 1
        return cls.from_dense(dense)

    @classmethod
    def from_coo(cls, rows: int, cols: int, r_idx, c_idx) -> "BitMatrix":
        """Build from parallel index arrays; repeated positions cancel."""
        words = np.zeros((rows, _nwords(cols)), dtype=np.uint64)
        r_idx = np.asarray(r_idx, dtype=np.intp)
        c_idx = np.asarray(c_idx, dtype=np.intp)
        if r_idx.size:
            bits = np.left_shift(np.uint64(1), (c_idx & 63).astype(np.uint64))
            np.bitwise_xor.at(words, (r_idx, c_idx >> 6), bits)
        return cls(rows, cols, words)

    @classmethod
    def from_rows(cls, rows: Sequence["BitMatrix"], cols: int) -> "BitMatrix":
        """Stack matrices vertically (all must have ``cols`` columns)."""
        parts = [r._words for r in rows if r.rows]
        if not parts:
            return cls(0, cols)
        for r in rows:
            if r.cols != cols:
                raise ValueError("column mismatch in vertical stack")
        return cls(sum(r.rows for r in rows), cols, np.vstack(parts))

    # -- basic accessors ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def words(self) -> np.ndarray:
        """Read-only packed representation."""
        return self._words

    def to_dense(self) -> np.ndarray:
        return unpack(self._words, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return int((int(self._words[i, j >> 6]) >> (j & 63)) & 1)

    def row(self, i: int) -> "BitMatrix":
        return BitMatrix(1, self.cols, self._words[i : i + 1].copy())

    def select_rows(self, idx: Sequence[int]) -> "BitMatrix":
        idx = np.asarray(idx, dtype=np.intp)
        return BitMatrix(len(idx), self.cols, self._words[idx].copy())

    def select_cols(self, idx: Sequence[int]) -> "BitMatrix":
        idx = np.asarray(idx, dtype=np.intp)
        return BitMatrix.from_dense(self.to_dense()[:, idx])

    def is_zero(self) -> bool:
        return not self._words.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._words, other._words)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, rank={self.rank()})"

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return BitMatrix(self.rows, self.cols, self._words ^ other._words)

    __sub__ = __add__

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0:
            return BitMatrix(self.rows, other.cols)
        out = _kernel.matmul(self._words, self.cols, other._words)
        return BitMatrix(self.rows, other.cols, out)

    @property
    def T(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in horizontal stack")
        return BitMatrix.from_dense(np.hstack([self.to_dense(), other.to_dense()]))

    # -- elimination ----------------------------------------------------------
    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return int(_kernel.rank(self._words.copy(), self.cols))

    def rref(self) -> tuple["BitMatrix", list[int]]:
        """Reduced row echelon form and its pivot columns.

        Zero rows are dropped, so the result has ``len(pivots)`` rows.
        """
        if self.rows == 0 or self.cols == 0:
            return BitMatrix(0, self.cols), []
        w = self._words.copy()
        pivots = list(_kernel.rref(w, self.cols))
        return BitMatrix(len(pivots), self.cols, w[: len(pivots)]), pivots

    def kernel_basis(self) -> "Subspace":
        """Null space ``{v : self @ v = 0}`` as a subspace of GF(2)^cols."""
        return Subspace(self.cols, _kernel_rows(self))

    def image(self) -> "Subspace":
        """Column space as a subspace of GF(2)^rows."""
        return Subspace.span(self.T)

    def apply_rows(self, vectors: "BitMatrix") -> "BitMatrix":
        """Map each row vector ``v`` of ``vectors`` to ``self @ v`` (as rows)."""
        return vectors @ self.T


def _kernel_rows(m: BitMatrix) -> BitMatrix:
    n = m.cols
    R, pivots = m.rref()
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    if not free:
        return BitMatrix(0, n)
    dense = np.zeros((len(free), n), dtype=np.uint8)
    dense[np.arange(len(free)), free] = 1
    if pivots:
        Rd = R.to_dense()
        dense[:, pivots] = Rd[:, free].T
    return BitMatrix.from_dense(dense)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of GF(2)^ambient_dim, stored by an RREF basis (one per row)."""

    ambient_dim: int
    basis: BitMatrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise ValueError("basis width does not match ambient dimension")
        R, _ = self.basis.rref()
        object.__setattr__(self, "basis", R)

    @classmethod
    def span(cls, vectors: BitMatrix) -> "Subspace":
        return cls(vectors.cols, vectors)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix(0, n))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, BitMatrix.identity(n))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        idx = sorted(set(indices))
        return cls(n, BitMatrix.from_entries(len(idx), n, [(k, i) for k, i in enumerate(idx)]))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, BitMatrix.from_rows([self.basis, other.basis], self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        # pairs (a, b) with a.A = b.B
        stacked = BitMatrix.from_rows([self.basis, other.basis], self.ambient_dim)
        coeffs = stacked.T.kernel_basis().basis
        if coeffs.rows == 0:
            return Subspace.zero(self.ambient_dim)
        left = coeffs.select_cols(range(self.dim))
        return Subspace(self.ambient_dim, left @ self.basis)

    def annihilator(self) -> "Subspace":
        """``{y : b . y = 0 for every b in self}``."""
        return self.basis.kernel_basis()

    def contains(self, vectors: BitMatrix) -> bool:
        if vectors.rows == 0:
            return True
        if vectors.cols != self.ambient_dim:
            raise ValueError("vector width does not match ambient dimension")
        return (self.annihilator().basis @ vectors.T).is_zero()

    def issubspace(self, other: "Subspace") -> bool:
        self._check(other)
        return other.contains(self.basis)

    def preimage(self, m: BitMatrix) -> "Subspace":
        """``{x : m @ x in self}`` for ``m`` of shape (ambient_dim, k)."""
        if m.rows != self.ambient_dim:
            raise ValueError("matrix rows must equal ambient dimension")
        ann = self.annihilator().basis
        return (ann @ m).kernel_basis() if ann.rows else Subspace.full(m.cols)

    def image_under(self, m: BitMatrix) -> "Subspace":
        """``m(self)`` for ``m`` of shape (k, ambient_dim)."""
        if m.cols != self.ambient_dim:
            raise ValueError("matrix columns must equal ambient dimension")
        return Subspace.span(m.apply_rows(self.basis))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))


def solve(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Return some ``x`` with ``a @ x = b`` (free variables set to 0).

    Raises ``ValueError`` when the system is inconsistent.
    """
    if a.rows != b.rows:
        raise ValueError("row mismatch between a and b")
    n = a.cols
    aug = BitMatrix.from_dense(np.hstack([a.to_dense(), b.to_dense()]))
    R, pivots = aug.rref()
    if pivots and pivots[-1] >= n:
        raise ValueError("inconsistent linear system")
    Rd = R.to_dense()
    x = np.zeros((n, b.cols), dtype=np.uint8)
    for k, c in enumerate(pivots):
        x[c] = Rd[k, n:]
    return BitMatrix.from_dense(x)


def quotient_dim(sub: Subspace, sup: Subspace) -> int:
    """``dim sup - dim sub``; ``sub`` must lie inside ``sup``."""
    if not sub.issubspace(sup):
        raise ValueError("quotient requested for a non-contained pair")
    return sup.dim - sub.dim


def rank(m: BitMatrix) -> int:
    return m.rank()


def kernel_basis(m: BitMatrix) -> Subspace:
    return m.kernel_basis()
