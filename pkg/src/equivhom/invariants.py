"""Invariant polynomials of linear finite-group actions over Q.

Everything is exact: coefficients are :class:`fractions.Fraction` and
linear algebra is fraction-valued Gauss-Jordan elimination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

import numpy as np

from .groups import FiniteGroup, HomomorphismError, direct_product, group_from_json

Exp = tuple[int, ...]
QMatrix = tuple[tuple[Fraction, ...], ...]


class ActionError(ValueError):
    """Matrices do not define a linear group action."""


class QuotientMapError(ValueError):
    """A map is not equivariant or cannot be written through the generators."""


# -- polynomials --------------------------------------------------------------

def _grlex_key(e: Exp) -> tuple:
    return (sum(e), e)


class RatPoly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exp, Fraction | int] | None = None):
        self.nvars = nvars
        clean: dict[Exp, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def zero(cls, nvars: int) -> "RatPoly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "RatPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "RatPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, e: Sequence[int], c=1) -> "RatPoly":
        return cls(len(e), {tuple(e): c})

    def gens(self):
        return [RatPoly.var(self.nvars, i) for i in range(self.nvars)]

    def _check(self, other: "RatPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "RatPoly":
        if isinstance(other, RatPoly):
            self._check(other)
            return other
        return RatPoly.const(self.nvars, other)

    def __add__(self, other) -> "RatPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return RatPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "RatPoly":
        return RatPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "RatPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatPoly":
        if not isinstance(other, RatPoly):
            c = Fraction(other)
            return RatPoly(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return RatPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RatPoly":
        if k < 0:
            raise ValueError("negative power")
        out, base = RatPoly.const(self.nvars, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RatPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == RatPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, k: int) -> "RatPoly":
        return RatPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == k})

    def leading_term(self) -> tuple[Exp, Fraction]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def monic(self) -> "RatPoly":
        if self.is_zero():
            return self
        return self * (1 / self.leading_term()[1])

    def __call__(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, polynomial has {self.nvars} variables")
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(pt, e):
                if k:
                    t *= v**k
            total += t
        return total

    def substitute(self, polys: Sequence["RatPoly"]) -> "RatPoly":
        """``f(polys[0], ..., polys[n-1])``; the result lives in the variables of ``polys``."""
        if len(polys) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutes, got {len(polys)}")
        m = polys[0].nvars if polys else 0
        powers: dict[tuple[int, int], RatPoly] = {}

        def power(i: int, k: int) -> RatPoly:
            if (i, k) not in powers:
                powers[(i, k)] = polys[i] ** k
            return powers[(i, k)]

        out = RatPoly.zero(m)
        for e, c in self.terms.items():
            t = RatPoly.const(m, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def diff(self, i: int) -> "RatPoly":
        out: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return RatPoly(self.nvars, out)

    def lift(self, nvars: int, offset: int) -> "RatPoly":
        """Same polynomial in ``nvars`` variables, its own occupying ``offset..``."""
        pad = nvars - offset - self.nvars
        return RatPoly(nvars, {(0,) * offset + e + (0,) * pad: c for e, c in self.terms.items()})

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = list(names) if names else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            mag = abs(c)
            if not mono:
                term = str(mag)
            elif mag == 1:
                term = mono
            else:
                term = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + term)
            else:
                parts.append(("- " if c < 0 else "+ ") + term)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"RatPoly({self.render()})"

    def to_json(self) -> list:
        return [[str(c), list(e)] for e, c in sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable) -> "RatPoly":
        """Terms as ``[[coefficient, [exponents]], ...]``; coefficients may be strings like ``"1/2"``."""
        return cls(nvars, _sum_terms((tuple(int(k) for k in e), Fraction(c)) for c, e in data))


def _sum_terms(items) -> dict:
    out: dict = {}
    for e, c in items:
        out[e] = out.get(e, 0) + c
    return out


def monomials(nvars: int, degree: int) -> list[Exp]:
    """Exponent vectors of total ``degree``, descending lexicographically."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


# -- linear algebra over Q ----------------------------------------------------

def q_rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; zero rows dropped."""
    m = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def q_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(q_rref(rows, ncols)[1])


def q_nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of ``{v : rows @ v = 0}``, one vector per free column."""
    red, pivots = q_rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[free]
        basis.append(v)
    return basis


def q_solve(rows: Sequence[Sequence[Fraction]], ncols: int, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``rows @ x = rhs`` (free variables zero), or ``None``."""
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = q_rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def _mat(rows) -> QMatrix:
    return tuple(tuple(Fraction(v) for v in r) for r in rows)


def mat_mul(a: QMatrix, b: QMatrix) -> QMatrix:
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0])))
                 for i in range(len(a)))


def mat_identity(d: int) -> QMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def mat_inverse(a: QMatrix) -> QMatrix:
    d = len(a)
    red, pivots = q_rref([list(r) + list(e) for r, e in zip(a, mat_identity(d))], 2 * d)
    if pivots[:d] != list(range(d)) or len(red) < d:
        raise ActionError("matrix is singular")
    return tuple(tuple(r[d:]) for r in red)


def mat_vec(a: QMatrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


# -- group actions ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LinearGroupAction:
    """``matrices[g]`` is the matrix of ``alpha_g`` on R^dim."""

    group: FiniteGroup
    dim: int
    matrices: tuple[QMatrix, ...]
    _inverses: tuple[QMatrix, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.matrices) != self.group.order:
            raise ActionError("need one matrix per group element")
        for m in self.matrices:
            if len(m) != self.dim or any(len(r) != self.dim for r in m):
                raise ActionError(f"matrices must be {self.dim}x{self.dim}")
        object.__setattr__(self, "_inverses", tuple(mat_inverse(m) for m in self.matrices))

    @classmethod
    def from_generators(cls, group: FiniteGroup, dim: int, gen_matrices: Sequence) -> "LinearGroupAction":
        mats = [_mat(m) for m in gen_matrices]
        if len(mats) != len(group.generators):
            raise ActionError(f"need one matrix per generator ({len(group.generators)})")
        for m in mats:
            if len(m) != dim or any(len(r) != dim for r in m):
                raise ActionError(f"matrices must be {dim}x{dim}")
        try:
            images = group.extend_hom(mats, mat_mul, mat_identity(dim))
        except HomomorphismError as exc:
            raise ActionError(str(exc)) from exc
        return cls(group, dim, tuple(images))

    @classmethod
    def trivial(cls, group: FiniteGroup, dim: int) -> "LinearGroupAction":
        return cls(group, dim, (mat_identity(dim),) * group.order)

    def homomorphism_defects(self) -> list[tuple[int, int]]:
        g = self.group
        bad = [(a, b) for a in range(g.order) for b in range(g.order)
               if mat_mul(self.matrices[a], self.matrices[b]) != self.matrices[g.mul(a, b)]]
        if self.matrices[g.identity] != mat_identity(self.dim):
            bad.insert(0, (g.identity, g.identity))
        return bad

    def inverse_matrix(self, g: int) -> QMatrix:
        return self._inverses[g]

    def apply(self, g: int, pt: Sequence) -> tuple[Fraction, ...]:
        return mat_vec(self.matrices[g], [Fraction(v) for v in pt])

    def orbit(self, pt: Sequence) -> set[tuple[Fraction, ...]]:
        return {self.apply(g, pt) for g in range(self.group.order)}

    def stabilizer(self, pt: Sequence) -> list[int]:
        p = tuple(Fraction(v) for v in pt)
        return [g for g in range(self.group.order) if self.apply(g, p) == p]


def act(g: int, f: RatPoly, a: LinearGroupAction) -> RatPoly:
    """``(g . f)(x) = f(alpha_g^{-1} x)``."""
    if f.nvars != a.dim:
        raise ValueError(f"polynomial has {f.nvars} variables, action has dimension {a.dim}")
    inv = a.inverse_matrix(g)
    forms = [RatPoly(a.dim, {tuple(int(k == j) for k in range(a.dim)): inv[i][j] for j in range(a.dim)})
             for i in range(a.dim)]
    return f.substitute(forms)


def reynolds(f: RatPoly, a: LinearGroupAction) -> RatPoly:
    """Average of ``g . f`` over the group."""
    total = reduce(lambda s, g: s + act(g, f, a), range(a.group.order), RatPoly.zero(a.dim))
    return total * Fraction(1, a.group.order)


def is_invariant(f: RatPoly, a: LinearGroupAction) -> bool:
    return all(act(g, f, a) == f for g in range(a.group.order))


# -- graded spans ---------------------------------------------------------------

def _vector(f: RatPoly, index: dict[Exp, int]) -> list[Fraction]:
    v = [Fraction(0)] * len(index)
    for e, c in f.terms.items():
        v[index[e]] = c
    return v


def _weighted_exponents(weights: Sequence[int], target: int, exact: bool = True) -> list[Exp]:
    """Exponent vectors ``k`` with ``sum k_i w_i == target`` (or ``<=``)."""
    out: list[Exp] = []

    def rec(i: int, left: int, acc: list[int]):
        if i == len(weights):
            if left == 0 or not exact:
                out.append(tuple(acc))
            return
        w = weights[i]
        top = left // w if w > 0 else 0
        for k in range(top, -1, -1):
            rec(i + 1, left - k * w, acc + [k])

    rec(0, target, [])
    return out


def _products(gens: Sequence[RatPoly], exps: Iterable[Exp], nvars: int) -> list[RatPoly]:
    out = []
    for k in exps:
        p = RatPoly.const(nvars, 1)
        for g, e in zip(gens, k):
            if e:
                p = p * g**e
        out.append(p)
    return out


def invariant_space(a: LinearGroupAction, k: int) -> list[RatPoly]:
    """Basis (reduced, monic) of the degree-``k`` invariants."""
    mons = monomials(a.dim, k)
    index = {e: i for i, e in enumerate(mons)}
    imgs = [reynolds(RatPoly.monomial(e), a) for e in mons]
    red, _ = q_rref([_vector(f, index) for f in imgs], len(mons))
    return [RatPoly(a.dim, {mons[i]: c for i, c in enumerate(r)}) for r in red]


def invariant_dim(a: LinearGroupAction, k: int) -> int:
    mons = monomials(a.dim, k)
    index = {e: i for i, e in enumerate(mons)}
    return q_rank([_vector(reynolds(RatPoly.monomial(e), a), index) for e in mons], len(mons))


def product_span_dim(gens: Sequence[RatPoly], nvars: int, k: int) -> int:
    """Dimension of the span of degree-``k`` products of homogeneous generators."""
    mons = monomials(nvars, k)
    index = {e: i for i, e in enumerate(mons)}
    prods = _products(gens, _weighted_exponents([g.degree for g in gens], k), nvars)
    return q_rank([_vector(p, index) for p in prods], len(mons))


def molien_series(a: LinearGroupAction, n: int) -> list[Fraction]:
    """Coefficients of ``(1/|G|) sum_g 1/det(I - t M_g)`` up to ``t^n``."""
    total = [Fraction(0)] * (n + 1)
    for m in a.matrices:
        den = _det_one_minus_tm(m)
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / den[0]
        for k in range(1, n + 1):
            s = sum((den[j] * inv[k - j] for j in range(1, min(k, len(den) - 1) + 1)), Fraction(0))
            inv[k] = -s / den[0]
        total = [x + y for x, y in zip(total, inv)]
    return [x / a.group.order for x in total]


def _det_one_minus_tm(m: QMatrix) -> list[Fraction]:
    """Coefficients of ``det(I - t M)`` via Faddeev-LeVerrier."""
    d = len(m)
    coeffs = [Fraction(1)]
    acc = tuple(tuple(Fraction(0) for _ in range(d)) for _ in range(d))
    c = Fraction(1)
    for k in range(1, d + 1):
        acc = tuple(tuple(acc[i][j] + (c if i == j else 0) for j in range(d)) for i in range(d))
        acc = mat_mul(m, acc)
        c = -sum((acc[i][i] for i in range(d)), Fraction(0)) / k
        coeffs.append(c)
    # det(tI - M) = t^d + c_1 t^(d-1) + ... + c_d, hence det(I - tM) = 1 + c_1 t + ... + c_d t^d
    return coeffs


# -- generators -------------------------------------------------------------------

@dataclass
class GeneratorSet:
    gens: list[RatPoly]
    action: LinearGroupAction
    bound: int
    certificate: dict[int, tuple[int, int]] = field(default_factory=dict)  # degree -> (products, invariants)

    @property
    def complete(self) -> bool:
        return all(p == i for p, i in self.certificate.values()) and len(self.certificate) == self.bound

    @property
    def degrees(self) -> list[int]:
        return [g.degree for g in self.gens]

    def lines(self, names: Sequence[str] | None = None) -> list[str]:
        out = [f"p{i + 1} = {g.render(names)}" for i, g in enumerate(self.gens)]
        for k, (p, i) in sorted(self.certificate.items()):
            out.append(f"degree {k}: products span {p}, invariants {i}")
        return out


def certify(gens: Sequence[RatPoly], a: LinearGroupAction, bound: int | None = None) -> dict[int, tuple[int, int]]:
    b = a.group.order if bound is None else bound
    return {k: (product_span_dim(gens, a.dim, k), invariant_dim(a, k)) for k in range(1, b + 1)}


def invariant_generators(a: LinearGroupAction) -> GeneratorSet:
    """Greedy homogeneous generators of degree at most ``|G|``.

    Reynolds images of monomials are scanned degree by degree in graded
    lexicographic order; an image is kept (made monic) when it is not in
    the span of the products already available in its degree.
    """
    bound = a.group.order
    gens: list[RatPoly] = []
    for k in range(1, bound + 1):
        mons = monomials(a.dim, k)
        index = {e: i for i, e in enumerate(mons)}
        span = [_vector(p, index) for p in _products(gens, _weighted_exponents([g.degree for g in gens], k), a.dim)]
        rank = q_rank(span, len(mons)) if span else 0
        for e in mons:
            r = reynolds(RatPoly.monomial(e), a)
            if r.is_zero():
                continue
            trial = span + [_vector(r, index)]
            new_rank = q_rank(trial, len(mons))
            if new_rank > rank:
                gens.append(r.monic())
                span, rank = trial, new_rank
    out = GeneratorSet(gens, a, bound)
    out.certificate = certify(gens, a, bound)
    return out


def in_algebra(f: RatPoly, gens: Sequence[RatPoly]) -> bool:
    """Whether ``f`` is a polynomial in ``gens`` of weighted degree at most ``deg f``."""
    if f.is_zero():
        return True
    nv = f.nvars
    weights = [max(g.degree, 1) for g in gens]
    prods = _products(gens, _weighted_exponents(weights, f.degree, exact=False), nv)
    support = sorted({e for p in prods + [f] for e in p.terms})
    index = {e: i for i, e in enumerate(support)}
    cols = [_vector(p, index) for p in prods]
    rows = [[c[i] for c in cols] for i in range(len(support))]
    return q_solve(rows, len(cols), _vector(f, index)) is not None


def algebra_equal(gens_a: Sequence[RatPoly], gens_b: Sequence[RatPoly]) -> bool:
    """Mutual membership: each set lies in the algebra generated by the other."""
    return all(in_algebra(f, gens_b) for f in gens_a) and all(in_algebra(f, gens_a) for f in gens_b)


# -- quotient map ---------------------------------------------------------------

def _gen_list(gens) -> list[RatPoly]:
    return list(gens.gens) if isinstance(gens, GeneratorSet) else list(gens)


def quotient_eval(gens, pt: Sequence) -> tuple[Fraction, ...]:
    return tuple(p(pt) for p in _gen_list(gens))


@dataclass
class SeparationReport:
    pairs_checked: int = 0
    violations: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def orbit_separation_check(gens, a: LinearGroupAction, sample: Sequence[Sequence]) -> SeparationReport:
    """Check ``pi(x) == pi(y)`` exactly when ``x`` and ``y`` share an orbit."""
    pts = [tuple(Fraction(v) for v in p) for p in sample]
    images = [quotient_eval(gens, p) for p in pts]
    orbits = [a.orbit(p) for p in pts]
    rep = SeparationReport()
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            rep.pairs_checked += 1
            same_orbit = pts[j] in orbits[i]
            same_image = images[i] == images[j]
            if same_orbit and not same_image:
                rep.violations.append((i, j, "same orbit, different images"))
            elif same_image and not same_orbit:
                rep.violations.append((i, j, "different orbits, same image"))
    return rep


def relations(gens, max_degree: int) -> list[RatPoly]:
    """Basis of relations ``P(p_1..p_m) = 0`` of weighted degree at most ``max_degree``.

    Variable ``z_i`` has weight ``deg p_i``. The basis is in reduced echelon
    form with respect to the weighted monomials, so it is canonical.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    gs = _gen_list(gens)
    if not gs:
        return []
    nv = gs[0].nvars
    weights = [max(g.degree, 1) for g in gs]
    zexps = sorted(_weighted_exponents(weights, max_degree, exact=False),
                   key=lambda k: (sum(w * e for w, e in zip(weights, k)), k), reverse=True)
    prods = _products(gs, zexps, nv)
    support = sorted({e for p in prods for e in p.terms})
    index = {e: i for i, e in enumerate(support)}
    cols = [_vector(p, index) for p in prods]
    rows = [[c[i] for c in cols] for i in range(len(support))]
    null = q_nullspace(rows, len(cols))
    red, _ = q_rref(null, len(cols))
    m = len(gs)
    return [RatPoly(m, {zexps[i]: c for i, c in enumerate(v)}) for v in red]


def in_span(f: RatPoly, basis: Sequence[RatPoly]) -> bool:
    support = sorted({e for p in list(basis) + [f] for e in p.terms})
    index = {e: i for i, e in enumerate(support)}
    cols = [_vector(p, index) for p in basis]
    rows = [[c[i] for c in cols] for i in range(len(support))]
    if not cols:
        return f.is_zero()
    return q_solve(rows, len(cols), _vector(f, index)) is not None


def is_equivariant(psi: Sequence[RatPoly], a: LinearGroupAction, b: LinearGroupAction) -> bool:
    """``psi(alpha_g x) == beta_g psi(x)`` for every group element."""
    if len(psi) != b.dim or any(p.nvars != a.dim for p in psi):
        raise QuotientMapError("map dimensions do not match the actions")
    x = RatPoly.zero(a.dim).gens()
    for g in range(a.group.order):
        m = a.matrices[g]
        moved = [sum((x[j] * m[i][j] for j in range(a.dim)), RatPoly.zero(a.dim)) for i in range(a.dim)]
        lhs = [p.substitute(moved) for p in psi]
        mb = b.matrices[g]
        rhs = [sum((psi[j] * mb[i][j] for j in range(b.dim)), RatPoly.zero(a.dim)) for i in range(b.dim)]
        if lhs != rhs:
            return False
    return True


def express(f: RatPoly, gens: Sequence[RatPoly]) -> RatPoly | None:
    """Some ``Q`` with ``Q(gens) == f``, searching weighted degree up to ``deg f``."""
    m = len(gens)
    if f.is_zero():
        return RatPoly.zero(m)
    weights = [max(g.degree, 1) for g in gens]
    zexps = sorted(_weighted_exponents(weights, f.degree, exact=False))
    prods = _products(gens, zexps, f.nvars)
    support = sorted({e for p in prods + [f] for e in p.terms})
    index = {e: i for i, e in enumerate(support)}
    cols = [_vector(p, index) for p in prods]
    rows = [[c[i] for c in cols] for i in range(len(support))]
    sol = q_solve(rows, len(cols), _vector(f, index))
    if sol is None:
        return None
    return RatPoly(m, {zexps[i]: c for i, c in enumerate(sol)})


def induced_quotient_map(psi: Sequence[RatPoly], a: LinearGroupAction, b: LinearGroupAction,
                         gens, gens_b) -> list[RatPoly]:
    """Polynomials ``Q_j`` with ``Q_j(p_1..p_m) = q_j o psi``.

    ``a`` and ``b`` must be actions of the same group on source and target.
    """
    if not a.group.same_table(b.group):
        raise QuotientMapError("source and target actions use different groups")
    if not is_equivariant(psi, a, b):
        raise QuotientMapError("map is not equivariant")
    ps, qs = _gen_list(gens), _gen_list(gens_b)
    out = []
    for j, q in enumerate(qs):
        h = q.substitute(list(psi))
        if not is_invariant(h, a):
            raise QuotientMapError(f"q_{j + 1} o psi is not invariant")
        sol = express(h, ps)
        if sol is None:
            raise QuotientMapError(f"q_{j + 1} o psi is not a polynomial in the source generators")
        if sol.substitute(ps) != h:
            raise QuotientMapError("certificate failed")
        out.append(sol)
    return out


@dataclass
class ProductReport:
    gens: list[RatPoly]
    certificate: dict[int, tuple[int, int]]

    @property
    def complete(self) -> bool:
        return all(p == i for p, i in self.certificate.values())


def product_action(a: LinearGroupAction, b: LinearGroupAction) -> LinearGroupAction:
    """``G x H`` acting blockwise on ``R^(d + d')``; element ``(g, h)`` has index ``g |H| + h``."""
    gh = direct_product(a.group, b.group)
    d = a.dim + b.dim
    mats = []
    for g in range(a.group.order):
        for h in range(b.group.order):
            ma, mb = a.matrices[g], b.matrices[h]
            rows = [list(r) + [Fraction(0)] * b.dim for r in ma] + [[Fraction(0)] * a.dim + list(r) for r in mb]
            mats.append(_mat(rows))
    return LinearGroupAction(gh, d, tuple(mats))


def product_action_check(a: LinearGroupAction, b: LinearGroupAction,
                         gens_a=None, gens_b=None) -> ProductReport:
    """Check that the lifted generator sets of ``a`` and ``b`` generate the product invariants."""
    ga = _gen_list(gens_a) if gens_a is not None else invariant_generators(a).gens
    gb = _gen_list(gens_b) if gens_b is not None else invariant_generators(b).gens
    ab = product_action(a, b)
    d = ab.dim
    lifted = [p.lift(d, 0) for p in ga] + [q.lift(d, a.dim) for q in gb]
    return ProductReport(lifted, certify(lifted, ab))


def jacobian(gens) -> list[list[RatPoly]]:
    gs = _gen_list(gens)
    return [[p.diff(j) for j in range(p.nvars)] for p in gs]


def jacobian_rank_at(gens, pt: Sequence) -> int:
    rows = [[entry(pt) for entry in row] for row in jacobian(gens)]
    return q_rank(rows, len(pt))


# -- JSON ---------------------------------------------------------------------------

def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise ActionError("matrix entries must be integers or rational strings, not floats")
    return Fraction(v)


def action_from_json(desc: dict) -> LinearGroupAction:
    """``{"group": ..., "dim": d, "matrices": [one d x d matrix per group generator]}``."""
    group = group_from_json(desc["group"])
    d = int(desc["dim"])
    mats = [[[_frac(v) for v in row] for row in m] for m in desc["matrices"]]
    a = LinearGroupAction.from_generators(group, d, mats)
    if a.homomorphism_defects():
        raise ActionError("matrices do not define a homomorphism")
    return a


def random_rational_points(rng: np.random.Generator, dim: int, count: int, spread: int = 5) -> list[tuple[Fraction, ...]]:
    nums = rng.integers(-spread, spread + 1, size=(count, dim))
    dens = rng.integers(1, spread + 1, size=(count, dim))
    return [tuple(Fraction(int(n), int(q)) for n, q in zip(r, s)) for r, s in zip(nums, dens)]
