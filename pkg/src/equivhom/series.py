"""Integer power series in ``u`` truncated after ``u^N``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_CUTOFF = 16


@dataclass(frozen=True)
class TruncSeries:
    """``c_0 + c_1 u + ... + c_N u^N + O(u^{N+1})`` with exact integer coefficients.

    Binary operations truncate to the smaller cutoff.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, cutoff: int = DEFAULT_CUTOFF) -> "TruncSeries":
        return cls((0,) * (cutoff + 1))

    @classmethod
    def one(cls, cutoff: int = DEFAULT_CUTOFF) -> "TruncSeries":
        return cls.monomial(0, cutoff)

    @classmethod
    def monomial(cls, d: int, cutoff: int = DEFAULT_CUTOFF, coeff: int = 1) -> "TruncSeries":
        c = [0] * (cutoff + 1)
        if d <= cutoff:
            c[d] = coeff
        return cls(tuple(c))

    @classmethod
    def from_dims(cls, dims: Sequence[int], cutoff: int | None = None) -> "TruncSeries":
        """Series with coefficients ``dims``, zero-padded or truncated to ``cutoff``."""
        n = len(dims) - 1 if cutoff is None else cutoff
        c = list(dims[: n + 1]) + [0] * max(0, n + 1 - len(dims))
        return cls(tuple(c))

    @classmethod
    def geometric(cls, cutoff: int = DEFAULT_CUTOFF) -> "TruncSeries":
        """``1 / (1 - u)``."""
        return cls((1,) * (cutoff + 1))

    # -- arithmetic -----------------------------------------------------------
    def _pair(self, other: "TruncSeries") -> tuple[tuple[int, ...], tuple[int, ...], int]:
        n = min(self.cutoff, other.cutoff)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        a, b, _ = self._pair(other)
        return TruncSeries(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        a, b, _ = self._pair(other)
        return TruncSeries(tuple(x - y for x, y in zip(a, b)))

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(tuple(-x for x in self.coeffs))

    def __mul__(self, other: "TruncSeries | int") -> "TruncSeries":
        if isinstance(other, int):
            return TruncSeries(tuple(other * x for x in self.coeffs))
        a, b, n = self._pair(other)
        out = [0] * (n + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(n + 1 - i):
                    out[i + j] += x * b[j]
        return TruncSeries(tuple(out))

    __rmul__ = __mul__

    def shift(self, d: int) -> "TruncSeries":
        """Multiply by ``u^d`` (same cutoff)."""
        if d < 0:
            raise ValueError("shift degree must be non-negative")
        n = self.cutoff
        return TruncSeries(((0,) * d + self.coeffs)[: n + 1])

    def truncate(self, cutoff: int) -> "TruncSeries":
        if cutoff > self.cutoff:
            raise ValueError("cannot raise the cutoff of a truncated series")
        return TruncSeries(self.coeffs[: cutoff + 1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        a, b, _ = self._pair(other)
        return a == b

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __getitem__(self, q: int) -> int:
        return self.coeffs[q]

    def __iter__(self):
        return iter(self.coeffs)

    # -- rendering ------------------------------------------------------------
    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def render(self, show_order: bool = True) -> str:
        """``-1 + 2*u + u^2 + O(u^17)``; zero terms are omitted."""
        parts: list[str] = []
        for q, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if q == 0:
                term = str(abs(c))
            else:
                mono = "u" if q == 1 else f"u^{q}"
                term = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        text = " ".join(parts) if parts else "0"
        if show_order:
            text += f" + O(u^{self.cutoff + 1})"
        return text

    def __str__(self) -> str:
        return self.render()


def sum_series(items: Iterable[TruncSeries], cutoff: int) -> TruncSeries:
    acc = TruncSeries.zero(cutoff)
    for s in items:
        acc = acc + s
    return acc
