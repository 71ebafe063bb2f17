"""Smith normal form over R = F[Z_k], via the quotient presentation
R = F[x]/(x^k - 1).

The invariant-ideal chain of an m x n matrix M over R is read off the
Euclidean Smith normal form of the augmented lift [M~ | (x^k-1) I_m] over
F[x]: the augmentation presents the same cokernel, forces every invariant
factor to divide x^k - 1, and (for m > n) pads the chain with copies of
x^k - 1 that reduce to zero in R.  No transformation matrices are
produced; instead every call certifies itself by comparing the predicted
rank sum with the exact rank of the expanded field matrix.
"""

from dataclasses import dataclass

from .exact import Poly, field_rank, snf_over_polys, poly_str
from .groupring import GroupRingElem, rho_extend


@dataclass(frozen=True)
class SnfDiagonal:
    """Diagonal of a Smith normal form over F[Z_k].

    `lifts` are the monic invariant factors in F[x], each dividing
    x^k - 1 and each dividing the next; `diag` is their image in the group
    ring (an entry is zero exactly when its lift is x^k - 1).
    """

    shape: tuple
    lifts: tuple
    diag: tuple

    @property
    def k(self):
        return self.diag[0].k if self.diag else None

    def entry_ranks(self, k):
        """rank(rho(D_ii)) per entry: k minus the lift degree."""
        return tuple(k - f.degree for f in self.lifts)

    def rank_sum(self, k):
        return sum(self.entry_ranks(k))

    def lift_strings(self):
        return [poly_str(f) for f in self.lifts]


def _group_ring_of_poly(field, k, f):
    # Reduce mod x^k - 1 by folding exponents (x^k == 1 in the quotient).
    folded = [field.zero()] * k
    for e, c in enumerate(f.coeffs):
        folded[e % k] = field.add(folded[e % k], c)
    return GroupRingElem(field, k, folded)


def snf_over_R(M, check=True):
    """Smith normal form diagonal of a GroupRingMatrix.

    With check=True (the default) the rank-consistency certificate
    field_rank(rho_extend(M)) == sum_i (k - deg f_i) is enforced.
    """
    field, k, m, n = M.field, M.k, M.rows, M.cols
    size = min(m, n)
    if size == 0:
        return SnfDiagonal(shape=(m, n), lifts=(), diag=())
    q = Poly.x_pow_minus_one(field, k)
    zero = Poly.zero(field)
    augmented = []
    for i in range(m):
        row = [M.data[i][j].lift() for j in range(n)]
        row.extend(q if i == j else zero for j in range(m))
        augmented.append(row)
    D, ok = snf_over_polys(augmented)
    if not ok:
        raise ArithmeticError("polynomial SNF self-check failed")
    factors = [D[i][i] for i in range(m)]
    for i, f in enumerate(factors):
        if f.is_zero() or not f.divides(q):
            raise ArithmeticError(
                f"invariant factor {i} = {f} does not divide x^{k}-1"
            )
    for a, b in zip(factors, factors[1:]):
        if not a.divides(b):
            raise ArithmeticError("divisibility chain broken in lifted SNF")
    for f in factors[size:]:
        # Only the free part of the cokernel can be dropped by truncation.
        if f != q:
            raise ArithmeticError("truncated a non-free invariant factor")
    lifts = tuple(factors[:size])
    diag = tuple(_group_ring_of_poly(field, k, f) for f in lifts)
    result = SnfDiagonal(shape=(m, n), lifts=lifts, diag=diag)
    if check:
        expected = field_rank(rho_extend(M))
        if result.rank_sum(k) != expected:
            raise ArithmeticError(
                f"rank certificate failed: SNF predicts {result.rank_sum(k)}, "
                f"expanded matrix has rank {expected}"
            )
    return result
