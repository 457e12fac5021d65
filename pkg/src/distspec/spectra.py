"""Symbolic closed-form spectra and equitable-quotient machinery.

Eigenvalues are carried symbolically:

* :class:`Int` -- an integer,
* :class:`Surd` -- the conjugate pair ``(a +- sqrt(d)) / q`` (or one branch),
* :class:`CosTerm` -- ``c + sign * 2cos(2 k pi / n)``,
* :class:`RootOf` -- one real root of an integer polynomial with no
  integer roots (only produced for quotients of order > 2).

A :class:`Spectrum` is a multiset of these values. Each entry remembers
whether it follows the published formula (``tag="paper"``) or was
changed to agree with the matrix oracle (``tag="corrected"``).
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import InvalidInputError, InvalidParameterError, NotEquitableError
from .graphs import ExactMatrix, check_param
from .linalg import char_poly, integer_roots, is_perfect_square

# 2cos(2 pi r) for each reduced denominator of r with an integral value.
_INTEGRAL_COSINE = {1: 2, 2: -2, 3: -1, 4: 0, 6: 1}


@dataclass(frozen=True)
class Int:
    v: int

    count = 1

    def numeric(self) -> list[float]:
        return [float(self.v)]

    def normalize(self) -> list["SpectralValue"]:
        return [self]

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class Surd:
    """``(a - sqrt(d))/q`` and ``(a + sqrt(d))/q``; ``branch`` picks one (+1/-1)."""

    a: int
    d: int
    q: int = 1
    branch: int = 0

    def __post_init__(self):
        if self.d < 0:
            raise InvalidInputError(f"negative radicand {self.d}: eigenvalues would be complex")
        if self.q < 1:
            raise InvalidInputError("surd denominator must be positive")
        if self.branch not in (-1, 0, 1):
            raise InvalidInputError("branch must be -1, 0 or +1")

    @property
    def count(self) -> int:
        return 2 if self.branch == 0 else 1

    def numeric(self) -> list[float]:
        r = math.sqrt(self.d)
        signs = (-1, 1) if self.branch == 0 else (self.branch,)
        return [(self.a + s * r) / self.q for s in signs]

    def normalize(self) -> list["SpectralValue"]:
        s = is_perfect_square(self.d)
        if s is None:
            return [self]
        signs = (-1, 1) if self.branch == 0 else (self.branch,)
        vals = [self.a + sg * s for sg in signs]
        if any(v % self.q for v in vals):
            return [self]
        return [Int(v // self.q) for v in vals]

    def __str__(self):
        pm = {0: "+-", 1: "+", -1: "-"}[self.branch]
        body = f"{self.a}{pm}sqrt({self.d})"
        return f"({body})/{self.q}" if self.q != 1 else body


@dataclass(frozen=True)
class CosTerm:
    """``c + sign * 2cos(2 k pi / n)``."""

    c: int
    n: int
    k: int
    sign: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("CosTerm period must be positive")
        if self.sign not in (-1, 1):
            raise InvalidInputError("CosTerm sign must be +1 or -1")

    count = 1

    @property
    def reduced_denominator(self) -> int:
        r = self.k % self.n
        return self.n // math.gcd(r, self.n) if r else 1

    def cosine_integer(self) -> int | None:
        """Exact value of 2cos(2 k pi / n) when it is an integer."""
        return _INTEGRAL_COSINE.get(self.reduced_denominator)

    def numeric(self) -> list[float]:
        v = self.cosine_integer()
        cos2 = float(v) if v is not None else 2.0 * math.cos(2.0 * math.pi * self.k / self.n)
        return [self.c + self.sign * cos2]

    def normalize(self) -> list["SpectralValue"]:
        v = self.cosine_integer()
        return [self] if v is None else [Int(self.c + self.sign * v)]

    def canonical(self) -> "CosTerm":
        r = self.k % self.n
        return CosTerm(self.c, self.n, min(r, self.n - r) if r else 0, self.sign)

    def __str__(self):
        op = "+" if self.sign > 0 else "-"
        return f"{self.c}{op}2cos(2*{self.k}*pi/{self.n})"


@dataclass(frozen=True)
class RootOf:
    """The ``index``-th smallest real root of ``poly`` (ascending coefficients)."""

    poly: tuple[int, ...]
    index: int

    count = 1

    def numeric(self) -> list[float]:
        return [_real_roots(self.poly)[self.index]]

    def normalize(self) -> list["SpectralValue"]:
        return [self]

    def __str__(self):
        return f"root[{self.index}] of {list(self.poly)}"


SpectralValue = Union[Int, Surd, CosTerm, RootOf]


def _real_roots(poly: tuple[int, ...]) -> list[float]:
    r = np.roots([float(c) for c in reversed(poly)])
    return sorted(float(x.real) for x in r)


def normalize(v: SpectralValue) -> list[SpectralValue]:
    """Split ``v`` into integer values when exact arithmetic allows it."""
    return v.normalize()


@dataclass(frozen=True)
class SpectrumEntry:
    value: SpectralValue
    multiplicity: int = 1
    tag: str = "paper"

    @property
    def count(self) -> int:
        return self.value.count * self.multiplicity


@dataclass(frozen=True)
class IntegralityCertificate:
    integral: bool
    witness: SpectralValue | None = None

    def __bool__(self):
        return self.integral


def _mobius(n: int) -> int:
    res, x, f = 1, n, 2
    while f * f <= x:
        if x % f == 0:
            x //= f
            if x % f == 0:
                return 0
            res = -res
        f += 1
    return -res if x > 1 else res


@dataclass(frozen=True)
class Spectrum:
    entries: tuple[SpectrumEntry, ...]
    order: int
    label: str = ""

    @property
    def total(self) -> int:
        return sum(e.count for e in self.entries)

    @property
    def has_correct_cardinality(self) -> bool:
        return self.total == self.order

    def numeric(self) -> list[float]:
        out = []
        for e in self.entries:
            out.extend(e.value.numeric() * e.multiplicity)
        return sorted(out)

    def integer_counts(self) -> Counter:
        """Multiset of the entries that normalize to integers."""
        c = Counter()
        for e in self.entries:
            for v in e.value.normalize():
                if isinstance(v, Int):
                    c[v.v] += e.multiplicity
        return c

    def irreducible(self) -> list[tuple[SpectralValue, int]]:
        out = []
        for e in self.entries:
            for v in e.value.normalize():
                if not isinstance(v, Int):
                    out.append((v, e.multiplicity))
        return out

    def tags(self) -> set[str]:
        return {e.tag for e in self.entries}

    def exact_trace(self) -> Fraction | None:
        """Exact eigenvalue sum, or ``None`` if it is not provably rational.

        Integral cosines are added directly. The others are summed over
        Galois orbits: the residues k with gcd(k, n) = g contribute
        mobius(n / g) to the sum of 2cos(2 k pi / n) when all carry the same
        weight.
        """
        total = Fraction(0)
        cos_weights: dict[int, Counter] = defaultdict(Counter)
        rootof: dict[tuple, Counter] = defaultdict(Counter)
        for e in self.entries:
            v, k = e.value, e.multiplicity
            if isinstance(v, Int):
                total += v.v * k
            elif isinstance(v, Surd):
                if v.branch == 0:
                    total += Fraction(2 * v.a, v.q) * k
                else:
                    s = is_perfect_square(v.d)
                    if s is None:
                        return None
                    total += Fraction(v.a + v.branch * s, v.q) * k
            elif isinstance(v, CosTerm):
                total += v.c * k
                cos_weights[v.n][v.k % v.n] += v.sign * k
            else:
                rootof[v.poly][v.index] += k
        for n, w in cos_weights.items():
            orbits: dict[int, set] = defaultdict(set)
            for r in range(n):
                g = math.gcd(r, n)
                if n // g in _INTEGRAL_COSINE:
                    total += w.get(r, 0) * _INTEGRAL_COSINE[n // g]
                else:
                    orbits[g].add(w.get(r, 0))
            for g, weights in orbits.items():
                if len(weights) != 1:
                    return None
                total += weights.pop() * 2 * _mobius(n // g)
        for poly, idx in rootof.items():
            deg = len(poly) - 1
            weights = {idx.get(i, 0) for i in range(deg)}
            if len(weights) != 1:
                return None
            total += weights.pop() * Fraction(-poly[-2], poly[-1])
        return total

    def merged(self) -> list[tuple[SpectralValue, int]]:
        """Presentation view: equal values from different entries combined."""
        counts: dict = {}
        for e in self.entries:
            for v in e.value.normalize():
                key = v.canonical() if isinstance(v, CosTerm) else v
                counts[key] = counts.get(key, 0) + e.multiplicity

        def sort_key(item):
            v = item[0]
            return (min(v.numeric()), str(v))

        return sorted(counts.items(), key=sort_key)

    def __str__(self):
        parts = []
        for v, k in self.merged():
            parts.append(f"{v}^{k}" if k > 1 else str(v))
        return "{" + ", ".join(parts) + "}"


def spectrum_is_integral(s: Spectrum) -> IntegralityCertificate:
    """True iff every entry normalizes to integers; else names the first offender."""
    for e in s.entries:
        for v in e.value.normalize():
            if not isinstance(v, Int):
                return IntegralityCertificate(False, v)
    return IntegralityCertificate(True)


# --------------------------------------------------------------------------
# Equitable partitions (block quotient of a matrix)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class EquitablePartition:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cells = tuple(tuple(int(v) for v in c) for c in self.cells)
        if any(len(c) == 0 for c in cells):
            raise InvalidInputError("partition cells must be non-empty")
        object.__setattr__(self, "cells", cells)

    def check_covers(self, n: int):
        seen = sorted(v for c in self.cells for v in c)
        if seen != list(range(n)):
            raise InvalidInputError(f"cells must partition 0..{n - 1} exactly")

    @classmethod
    def from_sizes(cls, sizes: Sequence[int]) -> "EquitablePartition":
        cells, start = [], 0
        for s in sizes:
            cells.append(tuple(range(start, start + s)))
            start += s
        return cls(tuple(cells))


def equitable_quotient(M: ExactMatrix, P: EquitablePartition) -> ExactMatrix:
    """k x k matrix of block row sums; raises if some block's row sums differ."""
    P.check_covers(M.order)
    k = len(P.cells)
    out = [[0] * k for _ in range(k)]
    for i, ci in enumerate(P.cells):
        for j, cj in enumerate(P.cells):
            sums = [sum(M.rows[r][c] for c in cj) for r in ci]
            if len(set(sums)) != 1:
                bad = [r for r, s in zip(ci, sums) if s != sums[0]]
                raise NotEquitableError((i, j), [ci[0]] + bad, sums)
            out[i][j] = sums[0]
    return ExactMatrix(tuple(map(tuple, out)))


def block_matrix(s: Sequence[Sequence[int]], p: Sequence[int], sizes: Sequence[int]) -> ExactMatrix:
    """Matrix with blocks ``s[i][j] * J`` plus ``p[i] * I`` on diagonal blocks."""
    _check_block_args(s, p, sizes)
    offsets = np.cumsum([0] + list(sizes))
    n = int(offsets[-1])
    cell = [i for i, sz in enumerate(sizes) for _ in range(sz)]
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            x = s[cell[r]][cell[c]]
            if r == c:
                x += p[cell[r]]
            row.append(x)
        rows.append(tuple(row))
    return ExactMatrix(tuple(rows))


def _check_block_args(s, p, sizes):
    k = len(sizes)
    if k == 0 or len(p) != k or len(s) != k or any(len(row) != k for row in s):
        raise InvalidInputError(f"size mismatch: s must be {k}x{k} and p of length {k}")
    if any(sz < 1 for sz in sizes):
        raise InvalidInputError("block sizes must be positive")


def lemma3_spectrum(s: Sequence[Sequence[int]], p: Sequence[int], sizes: Sequence[int]) -> Spectrum:
    """Spectrum of :func:`block_matrix` ``(s, p, sizes)`` via its quotient.

    The quotient ``B`` has ``b_ij = s_ij n_j`` plus ``p_i`` on the
    diagonal; the rest of the spectrum is ``p_i`` with multiplicity
    ``n_i - 1``.
    """
    _check_block_args(s, p, sizes)
    k = len(sizes)
    B = [[s[i][j] * sizes[j] + (p[i] if i == j else 0) for j in range(k)] for i in range(k)]
    entries = [SpectrumEntry(v, mult) for v, mult in quotient_eigenvalues(B)]
    for pi, ni in zip(p, sizes):
        if ni > 1:
            entries.append(SpectrumEntry(Int(pi), ni - 1))
    return Spectrum(tuple(entries), order=sum(sizes), label="block")


def quotient_eigenvalues(B: Sequence[Sequence[int]]) -> list[tuple[SpectralValue, int]]:
    """Exact eigenvalues of a small integer matrix with real spectrum."""
    k = len(B)
    if k == 1:
        return [(Int(B[0][0]), 1)]
    if k == 2:
        tr = B[0][0] + B[1][1]
        det = B[0][0] * B[1][1] - B[0][1] * B[1][0]
        return [(Surd(tr, tr * tr - 4 * det, 2), 1)]
    f = integer_roots(char_poly(ExactMatrix(tuple(map(tuple, B)))))
    out: list[tuple[SpectralValue, int]] = [(Int(r), m) for r, m in f.roots]
    rem = f.remainder
    if rem.degree == 2:
        c, b, _ = rem.coeffs
        out.append((Surd(-b, b * b - 4 * c, 2), 1))
    elif rem.degree > 2:
        out.extend((RootOf(rem.coeffs, i), 1) for i in range(rem.degree))
    return out


# --------------------------------------------------------------------------
# Family spectra
# --------------------------------------------------------------------------


def _cos_family(c: int, n: int, sign: int, ks, mult: int = 1, tag: str = "paper"):
    return [SpectrumEntry(CosTerm(c, n, k, sign), mult, tag) for k in ks]


def _ints(v: int, mult: int, tag: str = "paper"):
    return [SpectrumEntry(Int(v), mult, tag)] if mult > 0 else []


def cycle_adjacency_spectrum(n: int) -> Spectrum:
    """Adjacency spectrum of C_n: 2cos(2 k pi / n) for k = 0..n-1."""
    check_param("n", n, 3, "C_n undefined")
    entries = _cos_family(0, n, 1, [0], tag="corrected") + _cos_family(0, n, 1, range(1, n))
    return Spectrum(tuple(entries), order=n, label=f"A(C_{n})")


def wheel_radicand(m: int, n: int) -> int:
    return (m + n - 3) ** 2 - (3 * m * n - 8 * m - 4 * n + 8)


def wheel_distance_spectrum(m: int, n: int) -> Spectrum:
    check_param("m", m, 1, "at least one apex vertex is needed")
    check_param("n", n, 3, "C_n undefined")
    entries = (
        _ints(-2, m - 1)
        + [SpectrumEntry(Surd(m + n - 3, wheel_radicand(m, n), 1))]
        + _cos_family(-2, n, -1, range(1, n))
    )
    return Spectrum(tuple(entries), order=m + n, label=f"D(W_{m},{n})")


def egw_distance_spectrum(a: int, m: int, n: int) -> Spectrum:
    check_param("a", a, 1, "at least one copy of the empty graph is needed")
    check_param("m", m, 1, "at least one apex vertex is needed")
    check_param("n", n, 3, "C_n undefined")
    am = a * m
    entries = (
        _ints(-2, am - 1)
        + [SpectrumEntry(Surd(am + n - 3, wheel_radicand(am, n), 1))]
        + _cos_family(-2, n, -1, range(1, n))
    )
    return Spectrum(tuple(entries), order=am + n, label=f"D(EGW({a},{m},{n}))")


def kpp_radicand(p: int, n: int) -> int:
    return (2 * n + 3 * p - 6) ** 2 - 16 * p * n + 48 * p + 16 * n - 32


def kpp_join_cycle_distance_spectrum(p: int, n: int, as_printed: bool = False) -> Spectrum:
    """Distance spectrum of K_{p,p} joined with C_n.

    The part-swap eigenvector (1 on one side, -1 on the other) adds the
    eigenvalue ``p - 2``, tagged ``corrected``; ``as_printed=True`` leaves
    it out and yields only ``2p + n - 1`` values.
    """
    check_param("p", p, 1, "K_{p,p} part size must be positive")
    check_param("n", n, 3, "C_n undefined")
    entries = (
        _ints(-2, 2 * p - 2)
        + _cos_family(-2, n, -1, range(1, n))
        + [SpectrumEntry(Surd(2 * n + 3 * p - 6, kpp_radicand(p, n), 2))]
    )
    if not as_printed:
        entries += _ints(p - 2, 1, tag="corrected")
    return Spectrum(tuple(entries), order=2 * p + n, label=f"D(K_{p},{p}+C_{n})")


def dumbbell_radicands(m: int, n: int) -> tuple[int, int]:
    return (m + n + 4) ** 2 - 16 * m, 25 * m * m + 25 * n * n - 14 * m * n


def dumbbell_distance_spectrum(m: int, n: int, as_printed: bool = False) -> Spectrum:
    """Distance spectrum of the dumbbell of two W_{m,n}.

    The cycle eigenvalues run over k = 1..n-1 (each twice); the published
    range k = 2..n is available with ``as_printed=True`` and disagrees with
    the matrix whenever cos(2 pi / n) != 1.
    """
    check_param("m", m, 1, "at least one apex vertex is needed")
    check_param("n", n, 3, "C_n undefined")
    r1, r2 = dumbbell_radicands(m, n)
    ks, tag = (range(2, n + 1), "paper") if as_printed else (range(1, n), "corrected")
    entries = (
        _ints(-4, m - 1)
        + _ints(0, m - 1)
        + [SpectrumEntry(Surd(-(m + n + 4), r1, 2)), SpectrumEntry(Surd(5 * m + 5 * n - 8, r2, 2))]
        + _cos_family(-2, n, -1, ks, mult=2, tag=tag)
    )
    return Spectrum(tuple(entries), order=2 * (m + n), label=f"D(DB(W_{m},{n}))")


def dumbbell_dl_radicand(m: int, n: int) -> int:
    return (3 * m - 3 * n - 4) ** 2 + 4 * m * n


def dumbbell_distance_laplacian_spectrum(m: int, n: int) -> Spectrum:
    check_param("m", m, 1, "at least one apex vertex is needed")
    check_param("n", n, 3, "C_n undefined")
    entries = (
        _ints(0, 1)
        + _ints(3 * m + 3 * n, 1)
        + _ints(5 * m + 3 * n, m - 1)
        + _ints(5 * m + 3 * n - 4, m - 1)
        + _cos_family(3 * m + 5 * n - 2, n, 1, range(1, n), mult=2)
        + [SpectrumEntry(Surd(9 * m + 9 * n - 4, dumbbell_dl_radicand(m, n), 2))]
    )
    return Spectrum(tuple(entries), order=2 * (m + n), label=f"DL(DB(W_{m},{n}))")


CLOSED_FORMS = {
    ("wheel", "d"): wheel_distance_spectrum,
    ("egw", "d"): egw_distance_spectrum,
    ("kpp", "d"): kpp_join_cycle_distance_spectrum,
    ("dumbbell", "d"): dumbbell_distance_spectrum,
    ("dumbbell", "dl"): dumbbell_distance_laplacian_spectrum,
}


def closed_form_spectrum(family: str, kind: str, **params) -> Spectrum:
    try:
        fn = CLOSED_FORMS[(family, kind)]
    except KeyError:
        raise InvalidParameterError(f"no closed form for family {family!r} with matrix {kind!r}") from None
    return fn(**params)


def has_closed_form(family: str, kind: str) -> bool:
    return (family, kind) in CLOSED_FORMS
