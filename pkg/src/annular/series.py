"""
Closed-form cycle distributions and the polynomial bases they live in.

A series is returned either as a :class:`BinomialBasisPolynomial` (integer
coefficients against ``C(x, k)``, the natural form of the two-vertex formula)
or as a :class:`Polynomial` in the monomial basis, whose coefficient of
``x^k`` is the number of products with ``k`` cycles.

Every formula is evaluated with exact integers and ``Fraction`` intermediates.
Whenever a rational expression is supposed to be an integer, the code checks
it and raises :class:`NonIntegralError` otherwise; such a failure means a
formula or an index convention is wrong upstream.
"""
from __future__ import annotations

import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .combinat import (CycleDistribution, binom, double_factorial, falling_factorial,
                       pairing_count)

__all__ = [
    "NonIntegralError",
    "Polynomial",
    "BinomialBasisPolynomial",
    "SeriesSpec",
    "stirling1",
    "stirling2",
    "to_monomial",
    "from_monomial",
    "forward_differences",
    "hz_series",
    "delta",
    "main_series",
    "planar_coefficient",
    "sum_over_s",
    "jackson_series",
    "gs_series",
    "f_full_vertical",
    "v_vertical",
    "reduction_weight",
    "chain_weight",
    "c_via_reduction",
    "c_via_chain",
    "reduction_series",
    "genus_of",
    "class_size",
    "rooted_map_count",
    "mixed_pairing_count",
    "iter_specs",
]


class NonIntegralError(ArithmeticError):
    """An expression that must be an integer evaluated to a proper fraction."""


def _as_int(value: Fraction | int, what: str) -> int:
    if isinstance(value, int):
        return value
    if value.denominator != 1:
        raise NonIntegralError(f"{what} is not an integer: {value}")
    return value.numerator


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Integer polynomial in the monomial basis, stored as ``degree -> coefficient``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Sequence[int] = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = enumerate(coeffs)
        clean = {}
        for d, c in items:
            if d < 0:
                raise ValueError(f"negative degree {d}")
            if c:
                clean[int(d)] = _as_int(c, f"coefficient of x^{d}")
        self._coeffs = dict(sorted(clean.items()))

    @classmethod
    def from_distribution(cls, dist: CycleDistribution) -> Polynomial:
        return cls(dist.counts)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __getitem__(self, d: int) -> int:
        return self._coeffs.get(d, 0)

    @property
    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def evaluate(self, x: int) -> int:
        return sum(c * x ** d for d, c in self._coeffs.items())

    def distribution(self) -> CycleDistribution:
        """The cycle distribution this polynomial encodes; needs a zero constant term."""
        if self[0]:
            raise ValueError(f"constant term {self[0]} has no cycle-count meaning")
        return CycleDistribution(self._coeffs)

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._coeffs)
        for d, c in other._coeffs.items():
            out[d] = out.get(d, 0) + c
        return Polynomial(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Polynomial(0)"
        terms = [f"{c}*x^{d}" for d, c in sorted(self._coeffs.items(), reverse=True)]
        return "Polynomial(" + " + ".join(terms) + ")"


class BinomialBasisPolynomial:
    """``sum_k coeffs[k] * C(x, k)`` with integer coefficients."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Sequence[int] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else enumerate(coeffs)
        clean = {}
        for k, c in items:
            if k < 0:
                raise ValueError(f"negative basis index {k}")
            if c:
                clean[int(k)] = _as_int(c, f"coefficient of C(x, {k})")
        self._coeffs = dict(sorted(clean.items()))

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def __getitem__(self, k: int) -> int:
        return self._coeffs.get(k, 0)

    @property
    def degree(self) -> int:
        return max(self._coeffs, default=-1)

    def evaluate(self, x: int) -> int:
        return sum(c * _binom_at(x, k) for k, c in self._coeffs.items())

    def to_monomial(self) -> Polynomial:
        return to_monomial(self)

    def distribution(self) -> CycleDistribution:
        return to_monomial(self).distribution()

    def __eq__(self, other) -> bool:
        if isinstance(other, BinomialBasisPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"BinomialBasisPolynomial({self._coeffs})"


def _binom_at(x: int, k: int) -> int:
    # C(x, k) as a polynomial in x evaluated at an integer, negative x allowed
    num = 1
    for t in range(k):
        num *= x - t
    return num // math.factorial(k)


@lru_cache(maxsize=None)
def _falling_row(k: int) -> tuple[int, ...]:
    # coefficients of x (x-1) ... (x-k+1), lowest degree first
    row = [1]
    for t in range(k):
        nxt = [0] * (len(row) + 1)
        for d, c in enumerate(row):
            nxt[d + 1] += c
            nxt[d] -= t * c
        row = nxt
    return tuple(row)


def stirling1(k: int, m: int) -> int:
    """Signed Stirling number of the first kind ``s(k, m)``."""
    if k < 0 or m < 0 or m > k:
        return 0
    return _falling_row(k)[m]


@lru_cache(maxsize=None)
def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind ``S(m, k)``."""
    if m == k:
        return 1
    if k <= 0 or k > m:
        return 0
    return k * stirling2(m - 1, k) + stirling2(m - 1, k - 1)


def to_monomial(poly: BinomialBasisPolynomial) -> Polynomial:
    """
    Expand ``sum_k b_k C(x, k)`` with ``C(x, k) = (1/k!) sum_m s(k, m) x^m``.

    >>> to_monomial(BinomialBasisPolynomial({2: 2}))
    Polynomial(1*x^2 + -1*x^1)
    """
    acc: dict[int, Fraction] = {}
    for k, b in poly.coeffs.items():
        row = _falling_row(k)
        fk = math.factorial(k)
        for m, s in enumerate(row):
            if s:
                acc[m] = acc.get(m, Fraction(0)) + Fraction(b * s, fk)
    return Polynomial({m: _as_int(c, f"monomial coefficient of x^{m}") for m, c in acc.items()})


def from_monomial(poly: Polynomial) -> BinomialBasisPolynomial:
    """Inverse of :func:`to_monomial`, via ``x^m = sum_k S(m, k) k! C(x, k)``."""
    out: dict[int, int] = {}
    for m, c in poly.coeffs.items():
        for k in range(m + 1):
            term = stirling2(m, k) * math.factorial(k)
            if term:
                out[k] = out.get(k, 0) + c * term
    return BinomialBasisPolynomial(out)


def forward_differences(values: Sequence[int]) -> list[int]:
    """
    ``b_k = sum_m (-1)^(k-m) C(k, m) A(m)`` for ``k = 0 .. len(values) - 1``.

    These are the coefficients of the unique polynomial of degree
    ``< len(values)`` in the basis ``C(x, k)`` taking the given values at
    ``0, 1, 2, ...``.

    >>> forward_differences([0, 1, 2, 3])
    [0, 1, 0, 0]
    """
    vals = [int(v) for v in values]
    return [sum((-1) ** (k - m) * math.comb(k, m) * vals[m] for m in range(k + 1))
            for k in range(len(vals))]


def _shifted_binomial(c: int, n: int) -> list[Fraction]:
    # monomial coefficients of C(x + c, n)
    row = [Fraction(1)]
    for t in range(n):
        shift = c - t
        nxt = [Fraction(0)] * (len(row) + 1)
        for d, coef in enumerate(row):
            nxt[d + 1] += coef
            nxt[d] += shift * coef
        row = nxt
    fn = math.factorial(n)
    return [coef / fn for coef in row]


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesSpec:
    """Row sizes ``p, q`` and, when present, the number ``s`` of mixed pairs."""

    p: int
    q: int
    s: int | None = None

    def __post_init__(self):
        p, q, s = self.p, self.q, self.s
        if p < 1 or q < 1:
            raise ValueError(f"p and q must be positive, got p={p}, q={q}")
        if (p - q) % 2:
            raise ValueError(f"p={p} and q={q} must have the same parity")
        if s is not None:
            if s < 1:
                raise ValueError(f"s must be positive, got {s}")
            if (p - s) % 2:
                raise ValueError(f"s={s} must have the parity of p={p} and q={q}")
            if s > min(p, q):
                raise ValueError(f"s={s} exceeds min(p, q)={min(p, q)}")

    @property
    def n(self) -> int:
        return (self.p + self.q) // 2

    @property
    def loops(self) -> tuple[int, int]:
        """Loops at the two vertices, ``((p-s)/2, (q-s)/2)``."""
        self._need_s()
        return (self.p - self.s) // 2, (self.q - self.s) // 2

    def _need_s(self) -> None:
        if self.s is None:
            raise ValueError("this operation needs the mixed-pair count s")

    def mixed_values(self) -> range:
        """Every admissible ``s`` for these row sizes."""
        first = 2 - self.p % 2
        return range(first, min(self.p, self.q) + 1, 2)


# ---------------------------------------------------------------------------
# one vertex
# ---------------------------------------------------------------------------

def hz_series(p: int) -> BinomialBasisPolynomial:
    """One-vertex series ``(2n-1)!! sum_k 2^(k-1) C(n, k-1) C(x, k)`` with ``n = p/2``."""
    if p < 2 or p % 2:
        raise ValueError(f"hz_series needs an even p >= 2, got {p}")
    n = p // 2
    lead = double_factorial(2 * n - 1)
    return BinomialBasisPolynomial({k: lead * 2 ** (k - 1) * binom(n, k - 1)
                                    for k in range(1, n + 2)})


# ---------------------------------------------------------------------------
# two vertices, fixed s
# ---------------------------------------------------------------------------

def delta(spec: SeriesSpec, k: int, i: int, j: int) -> int:
    spec._need_s()
    p, q, s = spec.p, spec.q, spec.s
    km = k - 1
    return (binom(km, (p - s) // 2 - i) * binom(km, (q - s) // 2 - j)
            - binom(km, (p + s) // 2 - i) * binom(km, (q + s) // 2 - j))


def main_series(spec: SeriesSpec) -> BinomialBasisPolynomial:
    """Binomial-basis series of the two-cycle distribution with exactly ``s`` mixed pairs."""
    spec._need_s()
    p, q, n = spec.p, spec.q, spec.n
    scale = math.factorial(p) * math.factorial(q)
    coeffs = {}
    for k in range(1, n + 2):
        total = Fraction(0)
        for i in range(p // 2 + 1):
            for j in range(q // 2 + 1):
                top = binom(n - i - j, k - 1)
                if not top:
                    continue
                d = delta(spec, k, i, j)
                if not d:
                    continue
                total += Fraction(top * d, 2 ** (i + j) * math.factorial(i)
                                  * math.factorial(j) * math.factorial(n - i - j))
        coeffs[k] = _as_int(scale * total, f"binomial coefficient b_{k} of {spec}")
    return BinomialBasisPolynomial(coeffs)


def planar_coefficient(spec: SeriesSpec) -> int:
    """Count of genus-0 products: ``s C(p, (p-s)/2) C(q, (q-s)/2)``."""
    spec._need_s()
    i, j = spec.loops
    return spec.s * binom(spec.p, i) * binom(spec.q, j)


def sum_over_s(p: int, q: int) -> Polynomial:
    """``sum_{s >= 1}`` of :func:`main_series`, monomial basis."""
    base = SeriesSpec(p, q)
    total = Polynomial()
    for s in base.mixed_values():
        total = total + to_monomial(main_series(SeriesSpec(p, q, s)))
    return total


def jackson_series(n: int) -> Polynomial:
    """Summed two-vertex series for ``p = q = n`` in the shifted-binomial form."""
    if n < 1:
        raise ValueError(f"jackson_series needs n >= 1, got {n}")
    acc = [Fraction(0)] * (n + 1)
    for j in range((n - 1) // 2 + 1):
        for i in range(n - 2 * j):
            inner = Fraction(0)
            for k in range((n - 2 * j - 1) // 2 + 1):
                inner += Fraction(binom(2 * k, k) * binom(n, 2 * k), 4 ** k)
            weight = inner * binom(2 * j, j) * binom(n - 2 * j - 1, i)
            if weight:
                for d, c in enumerate(_shifted_binomial(j + i, n)):
                    acc[d] += weight * c
    scale = math.factorial(n)
    return Polynomial({d: _as_int(scale * c, f"x^{d} coefficient of jackson_series({n})")
                       for d, c in enumerate(acc)})


def gs_series(p: int, q: int) -> Polynomial:
    """Summed two-vertex series for arbitrary same-parity ``p, q``; ``p > q`` is swapped."""
    SeriesSpec(p, q)
    if p > q:
        p, q = q, p
    n = (p + q) // 2
    acc = [Fraction(0)] * (n + 1)
    for j in range((p - 1) // 2 + 1):
        inner = Fraction(0)
        for k in range((p - 2 * j - 1) // 2 + 1):
            inner += Fraction(1, 2 ** (n - p + 2 * k) * math.factorial(k)
                              * math.factorial(p - 2 * k) * math.factorial(n - p + k))
        for i in range(n - 2 * j):
            weight = inner * binom(2 * j, j) * binom(n - 2 * j - 1, i)
            if weight:
                for d, c in enumerate(_shifted_binomial(j + i, n)):
                    acc[d] += weight * c
    scale = math.factorial(p) * math.factorial(q)
    return Polynomial({d: _as_int(scale * c, f"x^{d} coefficient of gs_series({p}, {q})")
                       for d, c in enumerate(acc)})


# ---------------------------------------------------------------------------
# vertical arrays and the reduction chain
# ---------------------------------------------------------------------------

def f_full_vertical(s: int, k: int, i: int, j: int) -> int:
    """Full vertical paired arrays: ``s! sum_l C(s-1-l, k-1-l) C(k-1-l, i) C(k-1-l, j)``."""
    _check_vertical_args(s, k, i, j)
    total = 0
    for l in range(k):
        if s - 1 - l < 0:
            break
        total += binom(s - 1 - l, k - 1 - l) * binom(k - 1 - l, i) * binom(k - 1 - l, j)
    return math.factorial(s) * total


def v_vertical(s: int, k: int, i: int, j: int) -> int:
    """Vertical paired arrays with ``s`` pairs, ``k`` columns, ``i+1`` and ``j+1`` marks."""
    _check_vertical_args(s, k, i, j)
    lead = Fraction(math.factorial(s + i) * math.factorial(s + j), math.factorial(s + i + j))
    bracket = (binom(k - 1, i) * binom(k - 1, j)
               - binom(k - 1, s + i) * binom(k - 1, s + j))
    return _as_int(lead * binom(s + i + j, k - 1) * bracket, f"v(s={s}, k={k}, i={i}, j={j})")


def _check_vertical_args(s: int, k: int, i: int, j: int) -> None:
    if s < 1 or k < 1 or i < 0 or j < 0:
        raise ValueError(f"need s, k >= 1 and i, j >= 0; got s={s}, k={k}, i={i}, j={j}")


def reduction_weight(spec: SeriesSpec, i: int, j: int) -> Fraction:
    """``p! q! / (2^(i+j) i! j! ((p+s)/2 - i)! ((q+s)/2 - j)!)``."""
    spec._need_s()
    p, q, s = spec.p, spec.q, spec.s
    return Fraction(math.factorial(p) * math.factorial(q),
                    2 ** (i + j) * math.factorial(i) * math.factorial(j)
                    * math.factorial((p + s) // 2 - i) * math.factorial((q + s) // 2 - j))


def chain_weight(spec: SeriesSpec, i: int, j: int) -> int:
    """Redundant-pair choices times removed-pair tuples before simplification."""
    spec._need_s()
    p, q, s = spec.p, spec.q, spec.s
    return (binom(p, 2 * i) * double_factorial(2 * i - 1)
            * binom(q, 2 * j) * double_factorial(2 * j - 1)
            * falling_factorial(p - 2 * i, (p - s - 2 * i) // 2)
            * falling_factorial(q - 2 * j, (q - s - 2 * j) // 2))


def _reduction_terms(spec: SeriesSpec):
    li, lj = spec.loops
    for i in range(li + 1):
        for j in range(lj + 1):
            yield i, j, li - i, lj - j


def c_via_reduction(spec: SeriesSpec, k: int) -> int:
    """Canonical paired arrays with ``k`` columns, from vertical counts and the simplified weight."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    total = Fraction(0)
    for i, j, ii, jj in _reduction_terms(spec):
        total += reduction_weight(spec, i, j) * v_vertical(spec.s, k, ii, jj)
    return _as_int(total, f"c({spec}, k={k})")


def c_via_chain(spec: SeriesSpec, k: int) -> int:
    """Same count as :func:`c_via_reduction`, using the unsimplified product of both reductions."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return sum(chain_weight(spec, i, j) * v_vertical(spec.s, k, ii, jj)
               for i, j, ii, jj in _reduction_terms(spec))


def reduction_series(spec: SeriesSpec) -> BinomialBasisPolynomial:
    return BinomialBasisPolynomial({k: c_via_reduction(spec, k) for k in range(1, spec.n + 2)})


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------

def genus_of(k: int, n: int, vertices: int) -> int:
    """
    Genus of a map with ``vertices`` in {1, 2}, ``n`` edges and ``k`` faces.

    >>> genus_of(3, 3, 2), genus_of(4, 3, 1)
    (0, 0)
    """
    if k < 1:
        raise ValueError(f"face count must be positive, got {k}")
    if vertices == 1:
        twice = n + 1 - k
    elif vertices == 2:
        twice = n - k
    else:
        raise ValueError(f"vertices must be 1 or 2, got {vertices}")
    if twice < 0 or twice % 2:
        raise ValueError(f"k={k} faces is impossible for {vertices} vertex map(s) with {n} edges")
    return twice // 2


def class_size(p: int, q: int) -> int:
    """Size of the conjugacy class of ``S_{p+q}`` with cycle type ``(p, q)``."""
    total = math.factorial(p + q)
    return total // (2 * p * q) if p == q else total // (p * q)


def rooted_map_count(spec: SeriesSpec, k: int) -> int:
    """Rooted two-vertex maps with ``k`` faces: ``a_k |C_{p,q}| / (2n-1)!``."""
    spec._need_s()
    a = to_monomial(main_series(spec))[k]
    value = Fraction(a * class_size(spec.p, spec.q), math.factorial(2 * spec.n - 1))
    return _as_int(value, f"rooted map count for {spec}, k={k}")


def mixed_pairing_count(spec: SeriesSpec) -> int:
    spec._need_s()
    return pairing_count(spec.p, spec.q, spec.s)


def _iter_specs(max_total: int) -> Iterable[SeriesSpec]:
    for total in range(2, max_total + 1, 2):
        for p in range(1, total):
            q = total - p
            for s in SeriesSpec(p, q).mixed_values():
                yield SeriesSpec(p, q, s)


def iter_specs(max_total: int) -> list[SeriesSpec]:
    """All valid ``(p, q, s)`` with ``p + q <= max_total``."""
    return list(_iter_specs(max_total))
