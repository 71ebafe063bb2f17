"""Exact arithmetic: the fields Q and F_p, univariate polynomials over them,
dense matrices with exact rank, and Smith normal form over F[x].

Scalars are plain Python values -- `fractions.Fraction` for rationals and
canonical integers in [0, p) for prime fields -- with a `Field` object
supplying the arithmetic.  Polynomials store coefficients lowest degree
first with no trailing zeros; the zero polynomial has degree -inf (a float,
never an integer).  No floating point enters any computation.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import DomainMismatchError

NEG_INF = float("-inf")


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Arithmetic interface shared by Q and F_p."""

    char = None
    name = None

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, v):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def __repr__(self):
        return self.name


class RationalField(Field):
    """The rationals; values are reduced Fractions with positive denominator
    (guaranteed by the Fraction type itself)."""

    char = 0
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def coerce(self, v):
        if isinstance(v, bool):
            raise TypeError("bool is not a rational scalar")
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        raise TypeError(f"cannot coerce {v!r} into Q")

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / Fraction(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """F_p for a prime p; values are ints kept in [0, p)."""

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.name = f"Fp:{p}"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def coerce(self, v):
        if isinstance(v, bool) or not isinstance(v, int):
            raise TypeError(f"cannot coerce {v!r} into {self.name}")
        return v % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return pow(a, self.p - 2, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    """The prime field F_p (cached, so GF(p) is GF(p))."""
    return PrimeField(p)


def parse_field(descriptor):
    """Build a field from a descriptor string: "Q" or "Fp:<prime>"."""
    if descriptor == "Q":
        return QQ
    if descriptor.startswith("Fp:"):
        try:
            p = int(descriptor[3:])
        except ValueError:
            raise ValueError(f"bad field descriptor {descriptor!r}") from None
        return GF(p)
    raise ValueError(f"bad field descriptor {descriptor!r} (want 'Q' or 'Fp:<prime>')")


def _same_field(a, b):
    if a.field != b.field:
        raise DomainMismatchError(f"mixed fields: {a.field} vs {b.field}")


class Poly:
    """Dense univariate polynomial over a Field.

    `coeffs` is a tuple, constant term first, with no trailing zeros; the
    zero polynomial is the empty tuple.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        cs = [field.coerce(c) for c in coeffs]
        z = field.zero()
        while cs and cs[-1] == z:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def x_pow_minus_one(cls, field, k):
        """x^k - 1, the modulus of the group-ring quotient."""
        return cls(field, (-1,) + (0,) * (k - 1) + (1,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        _same_field(self, other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        _same_field(self, other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [F.zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(ca, cb))
        return Poly(F, out)

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        return Poly(F, [F.mul(c, a) for a in self.coeffs])

    def __divmod__(self, other):
        _same_field(self, other)
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(F), self
        quo = [F.zero()] * (dq + 1)
        inv_lead = F.inv(other.leading())
        for i in range(dq, -1, -1):
            c = F.mul(rem[i + len(other.coeffs) - 1], inv_lead)
            quo[i] = c
            if c != F.zero():
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = F.sub(rem[i + j], F.mul(c, b))
        return Poly(F, quo), Poly(F, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        """True if self divides other (zero divides only zero)."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return f"Poly({self.field}, {poly_str(self)!r})"


def poly_str(p):
    """Render a polynomial with terms in descending degree, e.g. "x^2-1"."""
    if p.is_zero():
        return "0"
    F = p.field
    parts = []
    for e in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[e]
        if c == F.zero():
            continue
        negative = F.char == 0 and c < 0
        mag = -c if negative else c
        if e == 0:
            body = str(mag)
        else:
            xs = "x" if e == 1 else f"x^{e}"
            body = xs if mag == F.one() else f"{mag}{xs}"
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("-" if negative else "+") + body)
    return "".join(parts)


def parse_poly(field, text):
    """Inverse of poly_str for the formats this package emits."""
    text = text.replace(" ", "")
    if text == "0":
        return Poly.zero(field)
    text = text.replace("-", "+-")
    coeffs = {}
    for term in text.split("+"):
        if not term:
            continue
        if "x" in term:
            head, _, tail = term.partition("x")
            e = int(tail[1:]) if tail.startswith("^") else 1
            if head in ("", "-"):
                c = head + "1"
            else:
                c = head
        else:
            e, c = 0, term
        coeffs[e] = Fraction(c) if field.char == 0 else int(c)
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return Poly(field, out)


def poly_gcd(a, b):
    """Monic gcd in F[x]; gcd(0, 0) = 0."""
    _same_field(a, b)
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a, b):
    """Extended gcd in F[x]: (g, s, t) with s*a + t*b = g, g monic (or 0)."""
    _same_field(a, b)
    F = a.field
    s, s_next = Poly.one(F), Poly.zero(F)
    t, t_next = Poly.zero(F), Poly.one(F)
    g, g_next = a, b
    while not g_next.is_zero():
        q = g // g_next
        g, g_next = g_next, g - q * g_next
        s, s_next = s_next, s - q * s_next
        t, t_next = t_next, t - q * t_next
    if g.is_zero():
        return g, s, t
    c = F.inv(g.leading())
    return g.monic(), s.scale(c), t.scale(c)


class FieldMatrix:
    """Dense matrix over a Field; immutable after construction."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, rows, cols, data):
        data = tuple(tuple(field.coerce(v) for v in row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"shape mismatch: want {rows}x{cols}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, field, data):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(field, rows, cols, data)

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero()
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    def entry(self, i, j):
        return self.data[i][j]

    def transpose(self):
        return FieldMatrix(
            self.field, self.cols, self.rows,
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __mul__(self, other):
        if self.field != other.field:
            raise DomainMismatchError("matrix product over mixed fields")
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        F = self.field
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = F.zero()
                for t in range(self.cols):
                    acc = F.add(acc, F.mul(self.data[i][t], other.data[t][j]))
                row.append(acc)
            out.append(row)
        return FieldMatrix(F, self.rows, other.cols, out)

    def is_zero(self):
        z = self.field.zero()
        return all(v == z for row in self.data for v in row)

    def __eq__(self, other):
        return (
            isinstance(other, FieldMatrix)
            and self.field == other.field
            and self.data == other.data
            and self.rows == other.rows
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in row) for row in self.data)
        return f"FieldMatrix({self.field}, {self.rows}x{self.cols}: {body})"


def field_rank(M):
    """Rank by exact Gaussian elimination; 0 for empty matrices."""
    if M.rows == 0 or M.cols == 0:
        return 0
    F = M.field
    z = F.zero()
    a = [list(row) for row in M.data]
    rank = 0
    for col in range(M.cols):
        piv = None
        for i in range(rank, M.rows):
            if a[i][col] != z:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = F.inv(a[rank][col])
        for i in range(rank + 1, M.rows):
            c = a[i][col]
            if c == z:
                continue
            factor = F.mul(c, inv)
            for j in range(col, M.cols):
                a[i][j] = F.sub(a[i][j], F.mul(factor, a[rank][j]))
        rank += 1
        if rank == M.rows:
            break
    return rank


def _poly_grid(mat):
    rows = [list(r) for r in mat]
    m = len(rows)
    n = len(rows[0]) if m else 0
    field = None
    for row in rows:
        if len(row) != n:
            raise ValueError("ragged polynomial matrix")
        for p in row:
            if not isinstance(p, Poly):
                raise TypeError("entries must be Poly")
            if field is None:
                field = p.field
            elif p.field != field:
                raise DomainMismatchError("polynomial matrix over mixed fields")
    return rows, m, n, field


def _primitive(polys):
    """Scale a row or column of rational polynomials to primitive integer
    form.

    Scaling by a nonzero field constant is a unimodular operation over
    F[x]; keeping lines primitive blocks the coefficient explosion of
    naive remainder sequences.  No-op over prime fields and on zero lines.
    """
    if not polys:
        return polys
    field = polys[0].field
    if field.char != 0:
        return polys
    coeffs = [c for p in polys for c in p.coeffs]
    if not coeffs:
        return polys
    denom = lcm(*(c.denominator for c in coeffs))
    numer = 0
    for c in coeffs:
        numer = gcd(numer, c.numerator * (denom // c.denominator))
    scale = Fraction(denom, numer)
    return [p.scale(scale) for p in polys]


def snf_over_polys(mat):
    """Smith normal form over the Euclidean domain F[x].

    `mat` is a sequence of rows of Poly.  Returns (D, ok): D is the full
    diagonal matrix (monic nonzero entries first, each dividing the next,
    then zeros), ok reports the internal shape/divisibility validation.
    Transformation matrices are not produced.

    Pivot entries are eliminated pairwise with 2x2 extended-gcd transforms
    (determinant 1, so unimodular); the exact-division path handles the
    common already-divisible case.  Rows and columns are rescaled to
    primitive integer form over Q after each transform -- scaling a line
    by a nonzero constant is unimodular over F[x] and keeps coefficients
    near the size of the matrix minors instead of compounding.
    """
    A, m, n, _ = _poly_grid(mat)
    for i in range(m):
        A[i] = _primitive(A[i])
    t = 0
    size = min(m, n)
    while t < size:
        # Move a nonzero entry of minimal degree into the pivot slot.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if not A[i][j].is_zero():
                    if best is None or A[i][j].degree < A[best[0]][best[1]].degree:
                        best = (i, j)
        if best is None:
            break
        i0, j0 = best
        A[t], A[i0] = A[i0], A[t]
        for row in A:
            row[t], row[j0] = row[j0], row[t]

        while True:
            for i in range(t + 1, m):
                if A[i][t].is_zero():
                    continue
                a, b = A[t][t], A[i][t]
                if (b % a).is_zero():
                    q = b // a
                    A[i] = _primitive([A[i][j] - q * A[t][j] for j in range(n)])
                else:
                    g, s, u = poly_xgcd(a, b)
                    ag, bg = a // g, b // g
                    new_t = [s * A[t][j] + u * A[i][j] for j in range(n)]
                    new_i = [ag * A[i][j] - bg * A[t][j] for j in range(n)]
                    A[t] = _primitive(new_t)
                    A[i] = _primitive(new_i)
            for j in range(t + 1, n):
                if A[t][j].is_zero():
                    continue
                a, b = A[t][t], A[t][j]
                if (b % a).is_zero():
                    q = b // a
                    col = _primitive([row[j] - q * row[t] for row in A])
                    for row, v in zip(A, col):
                        row[j] = v
                else:
                    g, s, u = poly_xgcd(a, b)
                    ag, bg = a // g, b // g
                    new_t = [s * row[t] + u * row[j] for row in A]
                    new_j = [ag * row[j] - bg * row[t] for row in A]
                    new_t = _primitive(new_t)
                    new_j = _primitive(new_j)
                    for row, vt, vj in zip(A, new_t, new_j):
                        row[t] = vt
                        row[j] = vj
            # The xgcd column transforms mix column t back in, so recheck
            # both lines only now.
            col_clear = all(A[i][t].is_zero() for i in range(t + 1, m))
            row_clear = all(A[t][j].is_zero() for j in range(t + 1, n))
            if not (col_clear and row_clear):
                continue
            # Pivot row and column are clear; force pivot | submatrix.
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if not (A[i][j] % A[t][t]).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            A[t] = [A[t][j] + A[offender][j] for j in range(n)]
        t += 1

    for i in range(size):
        if not A[i][i].is_zero():
            A[i][i] = A[i][i].monic()

    ok = _validate_snf(A, m, n)
    return A, ok


def _validate_snf(A, m, n):
    for i in range(m):
        for j in range(n):
            if i != j and not A[i][j].is_zero():
                return False
    diag = [A[i][i] for i in range(min(m, n))]
    seen_zero = False
    for p in diag:
        if p.is_zero():
            seen_zero = True
        elif seen_zero:
            return False
        elif p.leading() != p.field.one():
            return False
    for a, b in zip(diag, diag[1:]):
        if not a.is_zero() and not a.divides(b):
            return False
    return True


def snf_diagonal(mat):
    """Diagonal entries of snf_over_polys as a list of Poly."""
    D, ok = snf_over_polys(mat)
    if not ok:
        raise ArithmeticError("Smith normal form self-check failed")
    size = min(len(D), len(D[0]) if D else 0)
    return [D[i][i] for i in range(size)]
