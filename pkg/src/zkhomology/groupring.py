"""The group ring F[Z_k]: elements, matrices, the subset-summing map, the
circulant representation, and circulant rank.

An element sum_i a_i alpha^i is a length-k coefficient tuple (a_0, ...,
a_{k-1}); multiplication is cyclic convolution.  The representation rho
sends alpha^c to the k x k matrix of the regular representation (the
transpose of the circulant matrix of the coefficient vector), so
rho(w)[i][j] = a_{(i-j) mod k}.  Elements print with ascending exponents,
e.g. "1 + a^1".
"""

from .errors import DomainMismatchError
from .exact import FieldMatrix, Poly, field_rank, poly_gcd


class GroupRingElem:
    """An element of F[Z_k] as a coefficient tuple over alpha powers."""

    __slots__ = ("field", "k", "coeffs")

    def __init__(self, field, k, coeffs):
        coeffs = tuple(field.coerce(c) for c in coeffs)
        if len(coeffs) != k:
            raise ValueError(f"need exactly {k} coefficients, got {len(coeffs)}")
        self.field = field
        self.k = k
        self.coeffs = coeffs

    @classmethod
    def zero(cls, field, k):
        return cls(field, k, (0,) * k)

    @classmethod
    def one(cls, field, k):
        return cls(field, k, (1,) + (0,) * (k - 1))

    @classmethod
    def generator_power(cls, field, k, exponent):
        coeffs = [0] * k
        coeffs[exponent % k] = 1
        return cls(field, k, coeffs)

    def _check(self, other):
        if self.field != other.field or self.k != other.k:
            raise DomainMismatchError("group-ring operands do not match")

    def is_zero(self):
        z = self.field.zero()
        return all(c == z for c in self.coeffs)

    def __add__(self, other):
        self._check(other)
        F = self.field
        return GroupRingElem(
            F, self.k, [F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        F = self.field
        return GroupRingElem(F, self.k, [F.neg(a) for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Cyclic convolution (alpha^k = e)."""
        self._check(other)
        F = self.field
        out = [F.zero()] * self.k
        for i, a in enumerate(self.coeffs):
            if a == F.zero():
                continue
            for j, b in enumerate(other.coeffs):
                m = (i + j) % self.k
                out[m] = F.add(out[m], F.mul(a, b))
        return GroupRingElem(F, self.k, out)

    def scale(self, c):
        F = self.field
        c = F.coerce(c)
        return GroupRingElem(F, self.k, [F.mul(c, a) for a in self.coeffs])

    def lift(self):
        """The coefficient-wise lift into F[x], degree < k."""
        return Poly(self.field, self.coeffs)

    def reindex(self, t):
        """Re-express in the basis of the generator alpha^t (t coprime to k):
        the coefficient of the new generator's m-th power is the coefficient
        of alpha^(t m)."""
        return GroupRingElem(
            self.field, self.k, [self.coeffs[(t * m) % self.k] for m in range(self.k)]
        )

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElem)
            and self.field == other.field
            and self.k == other.k
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, self.k, self.coeffs))

    def __str__(self):
        F = self.field
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == F.zero():
                continue
            negative = F.char == 0 and c < 0
            mag = -c if negative else c
            if e == 0:
                body = str(mag)
            elif mag == F.one():
                body = f"a^{e}"
            else:
                body = f"{mag}a^{e}"
            if not parts:
                parts.append(("-" if negative else "") + body)
            else:
                parts.append((" - " if negative else " + ") + body)
        return "".join(parts) if parts else "0"

    def __repr__(self):
        return f"GroupRingElem(k={self.k}, {self})"


def sigma(exponents, field, k):
    """Indicator sum of a subset of Z_k: A maps to sum of its elements."""
    coeffs = [0] * k
    for e in exponents:
        coeffs[e % k] = 1
    return GroupRingElem(field, k, coeffs)


class GroupRingMatrix:
    """Dense matrix over F[Z_k]."""

    __slots__ = ("field", "k", "rows", "cols", "data")

    def __init__(self, field, k, rows, cols, data):
        data = tuple(tuple(row) for row in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"shape mismatch: want {rows}x{cols}")
        for row in data:
            for v in row:
                if not isinstance(v, GroupRingElem) or v.field != field or v.k != k:
                    raise DomainMismatchError("entry outside the declared group ring")
        self.field = field
        self.k = k
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def from_rows(cls, field, k, data):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(field, k, rows, cols, data)

    @classmethod
    def zeros(cls, field, k, rows, cols):
        z = GroupRingElem.zero(field, k)
        return cls(field, k, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, k, n):
        z = GroupRingElem.zero(field, k)
        o = GroupRingElem.one(field, k)
        return cls(field, k, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    def entry(self, i, j):
        return self.data[i][j]

    def map_entries(self, fn):
        return GroupRingMatrix(
            self.field, self.k, self.rows, self.cols,
            [[fn(v) for v in row] for row in self.data],
        )

    def __mul__(self, other):
        if self.field != other.field or self.k != other.k:
            raise DomainMismatchError("matrix product over mixed group rings")
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        z = GroupRingElem.zero(self.field, self.k)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for t in range(self.cols):
                    acc = acc + self.data[i][t] * other.data[t][j]
                row.append(acc)
            out.append(row)
        return GroupRingMatrix(self.field, self.k, self.rows, other.cols, out)

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingMatrix)
            and self.field == other.field
            and self.k == other.k
            and self.data == other.data
        )

    def __repr__(self):
        body = "; ".join(", ".join(str(v) for v in row) for row in self.data)
        return f"GroupRingMatrix(k={self.k}, {self.rows}x{self.cols}: [{body}])"


def rho(w):
    """The k x k matrix of multiplication by w in the regular representation
    (transpose of the circulant matrix of w's coefficients)."""
    k = w.k
    data = [[w.coeffs[(i - j) % k] for j in range(k)] for i in range(k)]
    return FieldMatrix(w.field, k, k, data)


def rho_extend(M):
    """Entry-wise matrix extension of rho: blocks (a, b) hold rho(M[a][b])."""
    k = M.k
    z = M.field.zero()
    out = [[z] * (M.cols * k) for _ in range(M.rows * k)]
    for a in range(M.rows):
        for b in range(M.cols):
            w = M.data[a][b]
            for i in range(k):
                for j in range(k):
                    out[a * k + i][b * k + j] = w.coeffs[(i - j) % k]
    return FieldMatrix(M.field, M.rows * k, M.cols * k, out)


def circulant_rank(w):
    """rank(rho(w)) computed as k - deg gcd(lift(w), x^k - 1).

    Multiplication by w on F[x]/(x^k-1) has image of dimension
    k - deg gcd; tests cross-check this against the explicit k x k rank.
    """
    g = poly_gcd(w.lift(), Poly.x_pow_minus_one(w.field, w.k))
    return w.k - g.degree


def explicit_circulant_rank(w):
    """Independent route: build rho(w) and row-reduce it."""
    return field_rank(rho(w))
