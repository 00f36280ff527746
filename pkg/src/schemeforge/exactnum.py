"""Exact scalar and matrix arithmetic over Q and real quadratic fields Q[sqrt(p)].

Every eigenvalue, cosine, Krein parameter and Gram entry in this package is a
QuadNumber; no floating point enters any decision anywhere.  Floats appear only
through ``float()`` conversions used by sanity tests.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction]


class FieldMismatchError(ValueError):
    """Arithmetic between two distinct quadratic fields is a hard error."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (m, q) with n = m**2 * q and q square-free.  Requires n >= 1."""
    if n < 1:
        raise ValueError("radicand must be positive")
    m, q, d = 1, n, 2
    while d * d <= q:
        while q % (d * d) == 0:
            q //= d * d
            m *= d
        d += 1
    return m, q


@total_ordering
class QuadNumber:
    """Element a + b*sqrt(p) of Q[sqrt(p)], with p square-free (p = 1 means Q)."""

    __slots__ = ("a", "b", "p")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, p: int = 1):
        a = Fraction(a)
        b = Fraction(b)
        if p < 1:
            raise ValueError("radicand must be >= 1")
        if p > 1:
            m, q = squarefree_decompose(p)
            b *= m
            p = q
        if p == 1:
            a += b
            b = Fraction(0)
        if b == 0:
            p = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "p", p)

    def __setattr__(self, *_):
        raise AttributeError("QuadNumber is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, x: RationalLike) -> "QuadNumber":
        return cls(Fraction(x))

    @classmethod
    def sqrt(cls, p: int) -> "QuadNumber":
        return cls(0, 1, p)

    # -- predicates --------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def as_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def conjugate(self) -> "QuadNumber":
        return QuadNumber(self.a, -self.b, self.p)

    def conjugates(self) -> tuple["QuadNumber", ...]:
        if self.b == 0:
            return (self,)
        return (self, self.conjugate())

    # -- field coercion ----------------------------------------------------

    @staticmethod
    def _coerce(x) -> "QuadNumber":
        if isinstance(x, QuadNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return QuadNumber(x)
        return NotImplemented  # type: ignore[return-value]

    def _common_radicand(self, other: "QuadNumber") -> int:
        if self.p == other.p:
            return self.p
        if self.p == 1:
            return other.p
        if other.p == 1:
            return self.p
        raise FieldMismatchError(
            f"mixed radicands: sqrt({self.p}) vs sqrt({other.p})"
        )

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self._common_radicand(other)
        return QuadNumber(self.a + other.a, self.b + other.b, p)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self._common_radicand(other)
        a = self.a * other.a + self.b * other.b * p
        b = self.a * other.b + self.b * other.a
        return QuadNumber(a, b, p)

    __rmul__ = __mul__

    def inverse(self) -> "QuadNumber":
        if self.a == 0 and self.b == 0:
            raise ZeroDivisionError("division by zero QuadNumber")
        norm = self.a * self.a - self.b * self.b * self.p
        return QuadNumber(self.a / norm, -self.b / norm, self.p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadNumber(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons (exact) ----------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(p)."""
        a, b, p = self.a, self.b, self.p
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if b > 0 else -1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with b^2 p (equality impossible, sqrt(p)
        # irrational for square-free p > 1)
        if a > 0:  # b < 0
            return 1 if a * a > b * b * p else -1
        return -1 if a * a > b * b * p else 1

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.b == 0 and other.b == 0:
            return self.a == other.a
        return self.p == other.p and self.a == other.a and self.b == other.b

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.p))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    # -- conversions -------------------------------------------------------

    def __float__(self):
        return float(self.a) + float(self.b) * self.p ** 0.5

    def __repr__(self):
        return f"QuadNumber({self.a!r}, {self.b!r}, {self.p})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.b < 0:
            return f"{self.a}-{-self.b}*sqrt({self.p})"
        return f"{self.a}+{self.b}*sqrt({self.p})"

    @classmethod
    def parse(cls, text: str) -> "QuadNumber":
        """Inverse of ``str``: 'a/b' or 'a/b+c/d*sqrt(p)' (also with '-')."""
        text = text.strip()
        if "sqrt" not in text:
            return cls(Fraction(text))
        head, tail = text.split("*sqrt(", 1)
        p = int(tail.rstrip(")"))
        # split head into rational part and sqrt coefficient at the last +/-
        # that is not inside the leading sign or a fraction
        for i in range(len(head) - 1, 0, -1):
            if head[i] in "+-" and head[i - 1] not in "+-/":
                a = Fraction(head[:i])
                sgn = -1 if head[i] == "-" else 1
                b = sgn * Fraction(head[i + 1:])
                return cls(a, b, p)
        return cls(0, Fraction(head), p)


ZERO = QuadNumber(0)
ONE = QuadNumber(1)


def as_quad(x) -> QuadNumber:
    if isinstance(x, QuadNumber):
        return x
    return QuadNumber(Fraction(x))


class ExactPolynomial:
    """Polynomial with QuadNumber coefficients, ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [as_quad(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x) -> QuadNumber:
        x = as_quad(x)
        acc = QuadNumber(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, ExactPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"ExactPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            parts.append(f"({c})*t^{i}" if i else f"({c})")
        return " + ".join(parts)


class ExactMatrix:
    """Dense matrix of QuadNumbers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        grid = [[as_quad(x) for x in row] for row in entries]
        if grid and any(len(row) != len(grid[0]) for row in grid):
            raise ValueError("ragged matrix")
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        self.entries = grid

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = as_quad(c)
        return ExactMatrix(
            [[x * c for x in row] for row in self.entries]
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append(
                [
                    sum((x * y for x, y in zip(row, col)), QuadNumber(0))
                    for col in ot
                ]
            )
        return ExactMatrix(out)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self @ other
        return self.scale(other)

    __rmul__ = scale

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.entries)))

    def trace(self) -> QuadNumber:
        if self.rows != self.cols:
            raise ValueError("trace of non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), QuadNumber(0))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i)
        )

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in row] for row in self.entries]})"


def char_poly(m: ExactMatrix) -> ExactPolynomial:
    """Monic characteristic polynomial det(tI - m), exact (Faddeev-LeVerrier)."""
    if m.rows != m.cols:
        raise ValueError("char_poly requires a square matrix")
    n = m.rows
    if n == 0:
        return ExactPolynomial([1])
    coeffs = [QuadNumber(0)] * (n + 1)
    coeffs[n] = QuadNumber(1)
    mk = m
    ck = QuadNumber(1)
    for k in range(1, n + 1):
        if k > 1:
            shifted = ExactMatrix(
                [
                    [
                        mk.entries[i][j] + (ck if i == j else QuadNumber(0))
                        for j in range(n)
                    ]
                    for i in range(n)
                ]
            )
            mk = m @ shifted
        ck = mk.trace() * Fraction(-1, k)
        coeffs[n - k] = ck
    return ExactPolynomial(coeffs)


def rank(m: ExactMatrix) -> int:
    """Exact rank via Gaussian elimination over the field."""
    grid = [row[:] for row in m.entries]
    rows, cols = m.rows, m.cols
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if grid[i][c]), None)
        if pivot is None:
            continue
        grid[r], grid[pivot] = grid[pivot], grid[r]
        inv = grid[r][c].inverse()
        grid[r] = [x * inv for x in grid[r]]
        for i in range(rows):
            if i != r and grid[i][c]:
                f = grid[i][c]
                grid[i] = [x - f * y for x, y in zip(grid[i], grid[r])]
        r += 1
        if r == rows:
            break
    return r


def nullspace(m: ExactMatrix) -> list[list[QuadNumber]]:
    """Basis of the right nullspace, exact."""
    grid = [row[:] for row in m.entries]
    rows, cols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if grid[i][c]), None)
        if pivot is None:
            continue
        grid[r], grid[pivot] = grid[pivot], grid[r]
        inv = grid[r][c].inverse()
        grid[r] = [x * inv for x in grid[r]]
        for i in range(rows):
            if i != r and grid[i][c]:
                f = grid[i][c]
                grid[i] = [x - f * y for x, y in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [QuadNumber(0)] * cols
        vec[fc] = QuadNumber(1)
        for pr, pc in enumerate(pivots):
            vec[pc] = -grid[pr][fc]
        basis.append(vec)
    return basis


def is_psd(m: ExactMatrix) -> bool:
    """Exact PSD test by sign alternation of char-poly coefficients.

    For a symmetric matrix (real spectrum) all eigenvalues are >= 0 iff
    (-1)^(n-i) * c_i >= 0 for every coefficient c_i of t^i.
    """
    if not m.is_symmetric():
        raise ValueError("is_psd requires a symmetric matrix")
    poly = char_poly(m)
    n = m.rows
    for i, c in enumerate(poly.coeffs):
        s = c.sign()
        if s != 0 and s != (1 if (n - i) % 2 == 0 else -1):
            return False
    return True


def _floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def bounded_algebraic_integers(k: RationalLike, radicand: int = 1) -> list[QuadNumber]:
    """All algebraic integers of Q (radicand 1) or Q[sqrt(p)] with minimal
    polynomial degree <= 2 whose conjugates all lie in [-k, k].

    Rational case: the integers in [-k, k].  Quadratic case additionally the
    roots of t^2 + b t + c (b, c integers) with positive non-square
    discriminant whose square-free part is the radicand, both roots in [-k, k].
    """
    k = Fraction(k)
    if k <= 0:
        raise ValueError("k must be positive")
    hi = _floor_fraction(k)
    out = [QuadNumber(i) for i in range(-hi, hi + 1)]
    if radicand == 1:
        return out
    _, p = squarefree_decompose(radicand)
    if p == 1:
        raise ValueError("radicand must not be a perfect square")
    bmax = _floor_fraction(2 * k)
    for b in range(-bmax, bmax + 1):
        # roots of t^2 + b t + c in [-k, k]: need f(-k) >= 0, f(k) >= 0,
        # vertex -b/2 in [-k, k], and positive discriminant b^2 - 4c
        cmin_a = -k * k + k * b
        cmin_b = -k * k - k * b
        cmin = max(cmin_a, cmin_b)
        clo = cmin.numerator // cmin.denominator
        if clo < cmin:
            clo += 1
        chi = (b * b - 1) // 4  # discriminant > 0
        for c in range(clo, chi + 1):
            disc = b * b - 4 * c
            if disc <= 0:
                continue
            m, q = squarefree_decompose(disc)
            if q != p:
                continue
            root_hi = QuadNumber(Fraction(-b, 2), Fraction(m, 2), p)
            root_lo = QuadNumber(Fraction(-b, 2), Fraction(-m, 2), p)
            kq = QuadNumber(k)
            if -kq <= root_lo and root_hi <= kq:
                out.extend([root_lo, root_hi])
    out.sort()
    return out


def minimal_polynomial(x: QuadNumber) -> ExactPolynomial:
    """Monic minimal polynomial of x over Q."""
    if x.is_rational:
        return ExactPolynomial([-x.a, 1])
    tr = 2 * x.a
    nrm = x.a * x.a - x.b * x.b * x.p
    return ExactPolynomial([nrm, -tr, 1])


def is_algebraic_integer(x: QuadNumber) -> bool:
    poly = minimal_polynomial(x)
    return all(c.is_integer for c in poly.coeffs)


def quad_sqrt(x: QuadNumber) -> QuadNumber | None:
    """A square root of x inside its own field Q[sqrt(p)], or None.

    Solves (s + t*sqrt(p))^2 = a + b*sqrt(p) exactly.
    """
    if x.sign() < 0:
        return None
    if not x:
        return QuadNumber(0)
    a, b, p = x.a, x.b, x.p
    if b == 0:
        # either sqrt(a) rational, or sqrt(a) = t*sqrt(p) with t rational
        r = _fraction_sqrt(a)
        if r is not None:
            return QuadNumber(r, 0, 1) if p == 1 else QuadNumber(r, 0, p)
        if p > 1:
            t = _fraction_sqrt(a / p)
            if t is not None:
                return QuadNumber(0, t, p)
        return None
    # s^2 + t^2 p = a, 2 s t = b  =>  s^2 solves u^2 - a u + b^2 p / 4 = 0
    disc = a * a - b * b * p
    rd = _fraction_sqrt(disc)
    if rd is None:
        return None
    for u in ((a + rd) / 2, (a - rd) / 2):
        if u < 0:
            continue
        s = _fraction_sqrt(u)
        if s is None or s == 0:
            continue
        t = b / (2 * s)
        cand = QuadNumber(s, t, p)
        if cand * cand == x:
            return cand if cand.sign() >= 0 else -cand
    return None


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    from math import isqrt

    num, den = x.numerator, x.denominator
    rn, rdn = isqrt(num), isqrt(den)
    if rn * rn == num and rdn * rdn == den:
        return Fraction(rn, rdn)
    return None
