"""Exact integer linear algebra, Diophantine helpers and a float oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InvalidInputError
from .graphs import ExactMatrix


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients in ascending degree order.

    Trailing zero coefficients are dropped, so the zero polynomial has
    ``coeffs == ()`` and degree ``-1``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_roots(cls, roots: Sequence[int]) -> "IntPolynomial":
        p = cls((1,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def divide_linear(self, r: int) -> tuple["IntPolynomial", int]:
        """Synthetic division by ``(t - r)``: returns quotient and remainder."""
        if self.degree < 1:
            return IntPolynomial(()), self(r)
        acc = 0
        out = []
        for c in reversed(self.coeffs):
            acc = acc * r + c
            out.append(acc)
        rem = out.pop()
        return IntPolynomial(tuple(reversed(out))), rem

    def __str__(self):
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' if mono else ''}{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


@dataclass(frozen=True)
class IntegerRootFactorization:
    """``poly == prod (t - r)**k for (r, k) in roots`` times ``remainder``."""

    roots: tuple[tuple[int, int], ...]
    remainder: IntPolynomial

    @property
    def fully_integral(self) -> bool:
        return self.remainder.degree == 0

    def root_multiset(self) -> dict[int, int]:
        return dict(self.roots)

    def reconstruct(self) -> IntPolynomial:
        p = self.remainder
        for r, k in self.roots:
            p = p * IntPolynomial((-r, 1)) ** k
        return p


# --------------------------------------------------------------------------
# Determinants and characteristic polynomials
# --------------------------------------------------------------------------


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    a = [list(map(int, r)) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def shifted_det(M: ExactMatrix, x: int) -> int:
    """det(x*I - M), computed by Bareiss elimination."""
    n = M.order
    rows = [[(x if i == j else 0) - M.rows[i][j] for j in range(n)] for i in range(n)]
    return bareiss_det(rows)


def _interpolate_consecutive(values: Sequence[int]) -> IntPolynomial:
    # Newton forward differences at t = 0..n; exact because an integer
    # polynomial's k-th difference at 0 is divisible by k!.
    diffs = list(values)
    newton = []
    for k in range(len(values)):
        newton.append(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    coeffs = [0] * len(values)
    falling = [1]  # t (t-1) ... (t-k+1), ascending coefficients
    fact = 1
    for k, dk in enumerate(newton):
        if k:
            fact *= k
        if dk % fact:
            raise ArithmeticError("non-integral Newton coefficient")
        ck = dk // fact
        for i, f in enumerate(falling):
            coeffs[i] += ck * f
        nxt = [0] * (len(falling) + 1)
        for i, f in enumerate(falling):
            nxt[i + 1] += f
            nxt[i] -= k * f
        falling = nxt
    return IntPolynomial(tuple(coeffs))


def char_poly_interpolated(M: ExactMatrix) -> IntPolynomial:
    """det(tI - M) from Bareiss determinants at t = 0..n and interpolation."""
    return _interpolate_consecutive([shifted_det(M, x) for x in range(M.order + 1)])


def coefficient_bound(M: ExactMatrix) -> int:
    """Upper bound on |coefficients| of det(tI - M).

    Every eigenvalue is bounded by the max absolute row sum r, so the
    k-th elementary symmetric function is at most C(n, k) r**k.
    """
    n = M.order
    r = M.max_abs_row_sum()
    return max(math.comb(n, k) * r**k for k in range(n + 1))


@lru_cache(maxsize=None)
def _prime_table(count: int) -> tuple[int, ...]:
    return tuple(kernels.primes_below(2**kernels.PRIME_BITS, count))


def _moduli_for(bound: int) -> tuple[int, ...]:
    need = 2 * bound + 1
    count = 8
    while True:
        primes = _prime_table(count)
        prod = 1
        for i, p in enumerate(primes):
            prod *= p
            if prod > need:
                return primes[: i + 1]
        count *= 2


def char_poly_modular(M: ExactMatrix, backend=None) -> IntPolynomial:
    """det(tI - M) from residues modulo several primes and CRT.

    Enough primes are used for their product to exceed twice the
    coefficient bound, so the symmetric lift is the exact polynomial.
    """
    n = M.order
    primes = _moduli_for(coefficient_bound(M))
    if M.fits_int64():
        base = np.array(M.rows, dtype=np.int64)
    else:
        base = np.array(M.rows, dtype=object)
    acc = [0] * (n + 1)
    modulus = 1
    for p in primes:
        a = (base % p).astype(np.int64)
        res = kernels.charpoly_mod(a, p, backend=backend).tolist()
        inv = pow(modulus, -1, p)
        for i in range(n + 1):
            acc[i] += modulus * ((res[i] - acc[i]) * inv % p)
        modulus *= p
    half = modulus // 2
    return IntPolynomial(tuple(c - modulus if c > half else c for c in acc))


def char_poly(M: ExactMatrix, method: str = "modular", backend=None) -> IntPolynomial:
    """Exact monic characteristic polynomial det(tI - M).

    ``method="modular"`` (default) reduces modulo primes with the compiled
    Hessenberg kernel; ``method="interpolate"`` evaluates Bareiss
    determinants at n+1 integer points and interpolates. Both are exact.
    """
    if method == "modular":
        return char_poly_modular(M, backend=backend)
    if method == "interpolate":
        return char_poly_interpolated(M)
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------------------------------------
# Integer roots
# --------------------------------------------------------------------------


def _iroot_ceil(x: int, k: int) -> int:
    """Smallest integer r >= 0 with r**k >= x (x >= 0)."""
    if x <= 0:
        return 0
    if k == 1:
        return x
    lo, hi = 0, 1 << (x.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def root_bound(p: IntPolynomial) -> int:
    """Fujiwara bound: every complex root has modulus <= the result."""
    n = p.degree
    lead = abs(p.leading)
    best = 0
    for k in range(1, n + 1):
        c = abs(p.coeffs[n - k])
        if c == 0:
            continue
        if k == n:
            c = (c + 1) // 2
        # ceil((c / lead) ** (1/k))
        best = max(best, _iroot_ceil(-(-c // lead), k))
    return 2 * best


def integer_roots(p: IntPolynomial) -> IntegerRootFactorization:
    """Peel every integer root (with multiplicity) off ``p``.

    Candidates are divisors of the constant term inside the Fujiwara root
    bound; each is confirmed by exact synthetic division. The scan is
    linear in the bound, which for a characteristic polynomial is at most
    twice the largest absolute row sum of the matrix.
    """
    if p.is_zero:
        raise InvalidInputError("integer_roots of the zero polynomial is undefined")
    roots: dict[int, int] = {}
    coeffs = list(p.coeffs)
    zeros = 0
    while coeffs[zeros] == 0:
        zeros += 1
    if zeros:
        roots[0] = zeros
    rem = IntPolynomial(tuple(coeffs[zeros:]))

    def peel(r: int):
        nonlocal rem
        k = 0
        while rem.degree >= 1:
            q, rr = rem.divide_linear(r)
            if rr:
                break
            rem = q
            k += 1
        if k:
            roots[r] = roots.get(r, 0) + k

    bound = root_bound(rem) if rem.degree >= 1 else 0
    x = 1
    while x <= bound and rem.degree >= 1:
        if rem.coeffs[0] % x == 0:
            peel(x)
            peel(-x)
        x += 1
    return IntegerRootFactorization(tuple(sorted(roots.items())), rem)


# --------------------------------------------------------------------------
# Float oracle
# --------------------------------------------------------------------------


def float_eigenvalues(M, tol: float = 1e-12, backend=None) -> list[float]:
    """Ascending eigenvalues of a symmetric matrix by cyclic Jacobi rotations."""
    if isinstance(M, ExactMatrix):
        if not M.is_symmetric():
            raise InvalidInputError("Jacobi oracle requires a symmetric matrix")
        a = M.to_numpy(np.float64)
    else:
        a = np.asarray(M, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.array_equal(a, a.T):
            raise InvalidInputError("Jacobi oracle requires a symmetric matrix")
    return kernels.jacobi_eigenvalues(a, tol=tol, backend=backend).tolist()


# --------------------------------------------------------------------------
# Diophantine helpers
# --------------------------------------------------------------------------


def is_perfect_square(k: int) -> int | None:
    """Return ``s >= 0`` with ``s*s == k``, or ``None``."""
    if k < 0:
        return None
    s = math.isqrt(k)
    return s if s * s == k else None


def factor_pairs(N: int) -> list[tuple[int, int]]:
    """All ``(d, N // d)`` with ``d <= N // d``, ascending in ``d``."""
    if N < 1:
        raise InvalidInputError(f"factor_pairs needs N >= 1, got {N}")
    out = []
    for d in range(1, math.isqrt(N) + 1):
        if N % d == 0:
            out.append((d, N // d))
    return out


def pythagorean_with_leg(k: int) -> list[tuple[int, int]]:
    """All positive ``(b, c)`` with ``k**2 + b**2 == c**2``, ascending in ``b``."""
    if k < 1:
        raise InvalidInputError(f"leg must be positive, got {k}")
    out = []
    for d, e in factor_pairs(k * k):
        # (c - b)(c + b) = k^2 with both factors of equal parity
        if d != e and (d + e) % 2 == 0:
            out.append(((e - d) // 2, (e + d) // 2))
    return sorted(out)
