"""Exact arithmetic kernels: rational matrices, integer characteristic
polynomials, square-free decomposition, and quadratic-field values.

Everything here is exact; floats never enter. Rationals are
fractions.Fraction (arbitrary-precision, always reduced).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence, Union

RationalLike = Union[int, Fraction]


class DimensionError(ValueError):
    """Matrix dimensions incompatible with the requested operation."""


class RationalMatrix:
    """Dense matrix of exact rationals; equality is exact entrywise."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[RationalLike]]):
        self.data: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(x) for x in row) for row in data
        )
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        if any(len(row) != self.cols for row in self.data):
            raise DimensionError("ragged rows")

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "RationalMatrix":
        return RationalMatrix([[Fraction(0)] * cols for _ in range(rows)])

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.data[ij[0]][ij[1]]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.data)))

    def trace(self) -> Fraction:
        if not self.is_square:
            raise DimensionError("trace of non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), Fraction(0))

    def add(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch")
        return RationalMatrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ]
        )

    def scale(self, c: RationalLike) -> "RationalMatrix":
        c = Fraction(c)
        return RationalMatrix([[c * x for x in row] for row in self.data])

    def is_identity(self) -> bool:
        if not self.is_square:
            return False
        one, zero = Fraction(1), Fraction(0)
        for i, row in enumerate(self.data):
            for j, x in enumerate(row):
                if x != (one if i == j else zero):
                    return False
        return True

    def to_floats(self) -> list[list[float]]:
        return [[float(x) for x in row] for row in self.data]


def mat_mul(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = b.transpose().data
    return RationalMatrix(
        [
            [sum(x * y for x, y in zip(row, col) if x) for col in bt]
            for row in a.data
        ]
    )


def mat_pow(a: RationalMatrix, k: int) -> RationalMatrix:
    """Exact k-th power by binary exponentiation."""
    if not a.is_square:
        raise DimensionError("power of non-square matrix")
    if k < 0:
        raise ValueError("negative exponent")
    result = RationalMatrix.identity(a.rows)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if k > 1 else base
        k >>= 1
    return result


def rational_rank(a: RationalMatrix) -> int:
    """Rank over the rationals by exact Gaussian elimination."""
    m = [list(row) for row in a.data]
    rank = 0
    col = 0
    rows, cols = a.rows, a.cols
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree order."""

    coeffs: tuple[int, ...]

    @staticmethod
    def from_coeffs(coeffs: Sequence[int]) -> "IntPolynomial":
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return IntPolynomial(tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_argument(self, s: Fraction) -> "IntPolynomial":
        """Return p(x + s) when the result has integer coefficients."""
        # Horner on (x + s) with rational intermediates.
        acc: list[Fraction] = [Fraction(0)]
        for c in reversed(self.coeffs):
            # acc := acc*(x+s) + c
            new = [Fraction(0)] * (len(acc) + 1)
            for i, a in enumerate(acc):
                new[i + 1] += a
                new[i] += a * s
            new[0] += c
            acc = new
        if any(f.denominator != 1 for f in acc):
            raise ValueError("shifted polynomial is not integral")
        return IntPolynomial.from_coeffs([int(f) for f in acc])

    def mul_linear_shift(self, root: int) -> "IntPolynomial":
        """Multiply by (x - root)."""
        c = self.coeffs
        out = [0] * (len(c) + 1)
        for i, a in enumerate(c):
            out[i + 1] += a
            out[i] -= a * root
        return IntPolynomial.from_coeffs(out)


def poly_divmod_monic(p: IntPolynomial, d: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Divide p by a monic divisor d over the integers."""
    if not d.is_monic:
        raise ValueError("divisor must be monic")
    rem = list(p.coeffs)
    dd = d.degree
    if p.degree < dd:
        return IntPolynomial.from_coeffs([0]), p
    quo = [0] * (p.degree - dd + 1)
    for i in range(p.degree - dd, -1, -1):
        c = rem[i + dd]
        quo[i] = c
        if c:
            for j, dc in enumerate(d.coeffs):
                rem[i + j] -= c * dc
    return IntPolynomial.from_coeffs(quo), IntPolynomial.from_coeffs(rem[:dd] if dd else [0])


def char_poly(m: Sequence[Sequence[int]]) -> IntPolynomial:
    """Monic characteristic polynomial det(xI - M) of an integer matrix.

    Faddeev-LeVerrier over exact rationals; the divisions are by integers
    and the result is asserted integral.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise DimensionError("matrix is not square")
    a = RationalMatrix(m)
    # c[n] = 1; M_1 = A; c_{n-k} = -tr(A M_k)/k; M_{k+1} = A M_k + c_{n-k} I
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = RationalMatrix.identity(n)
    for k in range(1, n + 1):
        mk = mat_mul(a, mk)
        ck = -mk.trace() / k
        coeffs[n - k] = ck
        if k < n:
            mk = mk.add(RationalMatrix.identity(n).scale(ck))
    assert all(c.denominator == 1 for c in coeffs), "char poly must be integral"
    return IntPolynomial.from_coeffs([int(c) for c in coeffs])


# ---------------------------------------------------------------------------
# Square-free parts and quadratic values
# ---------------------------------------------------------------------------


def square_free_part(n: int) -> tuple[int, int]:
    """Split n = s * f^2 with s square-free, by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    s, f = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            count = 0
            while n % d == 0:
                n //= d
                count += 1
            f *= d ** (count // 2)
            if count % 2:
                s *= d
        d += 1 if d == 2 else 2
    s *= n
    return s, f


@dataclass(frozen=True)
class QuadraticValue:
    """Exact number a + b*sqrt(m) with a, b rational and m square-free.

    m == 1 canonically encodes plain rationals (then b == 0).
    """

    a: Fraction
    b: Fraction
    m: int

    @staticmethod
    def of(a: RationalLike, b: RationalLike = 0, m: int = 1) -> "QuadraticValue":
        a, b = Fraction(a), Fraction(b)
        if m < 1:
            raise ValueError("m must be a positive integer")
        s, f = square_free_part(m)
        b *= f
        m = s
        if b == 0 or m == 1:
            a, b, m = a + (b if m == 1 else 0), Fraction(0), 1
        return QuadraticValue(a, b, m)

    @staticmethod
    def rational(a: RationalLike) -> "QuadraticValue":
        return QuadraticValue.of(a)

    @property
    def is_rational(self) -> bool:
        return self.m == 1

    def conjugate(self) -> "QuadraticValue":
        return QuadraticValue.of(self.a, -self.b, self.m)

    def __add__(self, other: "QuadraticValue") -> "QuadraticValue":
        m = self._join(other)
        return QuadraticValue.of(self.a + other.a, self.b + other.b, m)

    def __mul__(self, other: "QuadraticValue") -> "QuadraticValue":
        m = self._join(other)
        return QuadraticValue.of(
            self.a * other.a + self.b * other.b * m,
            self.a * other.b + self.b * other.a,
            m,
        )

    def scale(self, c: RationalLike) -> "QuadraticValue":
        c = Fraction(c)
        return QuadraticValue.of(self.a * c, self.b * c, self.m)

    def _join(self, other: "QuadraticValue") -> int:
        if self.m != 1 and other.m != 1 and self.m != other.m:
            raise ValueError(f"incompatible radicands {self.m} and {other.m}")
        return self.m if self.m != 1 else other.m

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.m ** 0.5

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt({self.m})"


def quadratic_from_string(s: str) -> QuadraticValue:
    """Parse the exact rendering produced by str(QuadraticValue)."""
    s = s.replace(" ", "")
    if "sqrt" not in s:
        return QuadraticValue.rational(Fraction(s))
    head, tail = s.split("*sqrt(")
    m = int(tail.rstrip(")"))
    # head is "<a><sign><|b|>"; the separating sign is the last +/- past
    # position 0 (Fraction strings carry no interior signs)
    sign_pos = max(head.rfind("+", 1), head.rfind("-", 1))
    a_str, b_str = head[:sign_pos], head[sign_pos:]
    return QuadraticValue.of(Fraction(a_str), Fraction(b_str), m)


def is_quadratic_algebraic_integer(v: QuadraticValue) -> bool:
    """Ring-of-integers membership test for Q(sqrt(m)).

    m = 2,3 mod 4: integers are p + q*sqrt(m), p,q in Z.
    m = 1 mod 4:   integers are p + q*(1+sqrt(m))/2, p,q in Z.
    m = 1:         plain rational integers.
    """
    if v.m == 1:
        return v.a.denominator == 1
    if v.m % 4 in (2, 3):
        return v.a.denominator == 1 and v.b.denominator == 1
    # m = 1 mod 4: need q = 2b in Z and p = a - b in Z
    q = 2 * v.b
    return q.denominator == 1 and (v.a - v.b).denominator == 1


def eval_at_quadratic(p: IntPolynomial, v: QuadraticValue) -> QuadraticValue:
    acc = QuadraticValue.rational(0)
    for c in reversed(p.coeffs):
        acc = acc * v + QuadraticValue.rational(c)
    return acc


class HigherDegreeFactor(Exception):
    """The polynomial has an irreducible factor of degree > 2 (or a
    non-real quadratic factor, which is equally outside scope)."""


def _integer_roots(p: IntPolynomial) -> list[int]:
    """Candidate integer roots of a monic integer polynomial (divisors of
    the constant term, after stripping powers of x)."""
    c0 = p.coeffs[0]
    if c0 == 0:
        return [0]
    cands = set()
    d = 1
    while d * d <= abs(c0):
        if c0 % d == 0:
            cands.update({d, -d, c0 // d, -(c0 // d)})
        d += 1
    return sorted(cands, key=abs)


def roots_degree_le2(p: IntPolynomial) -> list[tuple[QuadraticValue, int]]:
    """Factor a monic integer polynomial into roots of algebraic degree <= 2.

    Returns (root, multiplicity) pairs. Rational roots of a monic integer
    polynomial are integers; irreducible monic quadratic factors have
    integer coefficients (Gauss), so an integer search is complete.
    Raises HigherDegreeFactor when a residual admits no such factor.
    """
    if not p.is_monic:
        raise ValueError("polynomial must be monic")
    rem = p
    roots: dict[QuadraticValue, int] = {}

    def record(v: QuadraticValue, mult: int = 1) -> None:
        roots[v] = roots.get(v, 0) + mult

    # strip x^k
    while rem.degree > 0 and rem.coeffs[0] == 0:
        rem = poly_divmod_monic(rem, IntPolynomial.from_coeffs([0, 1]))[0]
        record(QuadraticValue.rational(0))

    # strip integer roots exhaustively
    progress = True
    while rem.degree > 0 and progress:
        progress = False
        for r in _integer_roots(rem):
            while rem.degree > 0 and rem(Fraction(r)) == 0:
                rem = poly_divmod_monic(rem, IntPolynomial.from_coeffs([-r, 1]))[0]
                record(QuadraticValue.rational(r))
                progress = True

    # peel irreducible monic integer quadratics x^2 + beta*x + gamma
    while rem.degree >= 2:
        found = False
        # Cauchy bound on root magnitude bounds |beta| <= 2B, |gamma| <= B^2
        bound = 1 + max(abs(c) for c in rem.coeffs[:-1])
        c0 = rem.coeffs[0]  # nonzero: all rational roots were stripped
        divisors = set()
        d = 1
        while d * d <= abs(c0):
            if c0 % d == 0:
                divisors.update({d, -d, abs(c0) // d, -(abs(c0) // d)})
            d += 1
        gammas = sorted((g for g in divisors if abs(g) <= bound * bound), key=abs)
        for gamma in gammas:
            for beta in range(-2 * bound, 2 * bound + 1):
                q = IntPolynomial.from_coeffs([gamma, beta, 1])
                quo, r = poly_divmod_monic(rem, q)
                if r.is_zero:
                    disc = beta * beta - 4 * gamma
                    if disc <= 0:
                        # disc == 0 impossible here (double rational root was
                        # stripped); disc < 0 means complex roots
                        raise HigherDegreeFactor(
                            f"non-real quadratic factor x^2+{beta}x+{gamma}"
                        )
                    s, f = square_free_part(disc)
                    if s == 1:
                        # reducible; its rational roots were already stripped
                        continue
                    record(QuadraticValue.of(Fraction(-beta, 2), Fraction(f, 2), s))
                    record(QuadraticValue.of(Fraction(-beta, 2), -Fraction(f, 2), s))
                    rem = quo
                    found = True
                    break
            if found:
                break
        if not found:
            raise HigherDegreeFactor(f"no degree<=2 factor of residual {rem.coeffs}")

    if rem.degree == 1:
        # monic linear remainder: root is an integer, but it escaped the
        # search only if logic above is wrong
        record(QuadraticValue.rational(-rem.coeffs[0]))

    return sorted(roots.items(), key=lambda kv: (kv[0].m, kv[0].a, kv[0].b))
