"""Abstract simplicial complexes, boundary matrices, direct Betti numbers,
and barycentric subdivision.

A simplex is a tuple of strictly increasing non-negative vertex ids.  A
complex stores, per dimension, the lexicographically sorted list of its
simplices (this is the default ordering of each chain-group basis) and is
always downward closed.  Orientations are sign tables relative to the
increasing-vertex ordering; the default orientation is +1 everywhere.
"""

from itertools import combinations

from .errors import DimensionError, InvalidSimplexError, UnknownSimplexError
from .exact import FieldMatrix, field_rank


def as_simplex(vertices):
    """Canonicalize a vertex collection into a simplex tuple."""
    given = tuple(vertices)
    vs = tuple(sorted(set(given)))
    if not vs:
        raise InvalidSimplexError("a simplex needs at least one vertex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InvalidSimplexError(f"bad vertex identifier {v!r}")
    if len(vs) != len(given) and not isinstance(vertices, (set, frozenset)):
        raise InvalidSimplexError(f"repeated vertices in {given!r}")
    return vs


def faces(simplex):
    """Codimension-1 faces with their alternating-sum index: (t, face)."""
    return [(t, simplex[:t] + simplex[t + 1:]) for t in range(len(simplex))]


class Complex:
    """A finite abstract simplicial complex with canonical indexing."""

    __slots__ = ("_by_dim", "_index")

    def __init__(self, simplices):
        closed = set()
        for s in simplices:
            s = as_simplex(s)
            for r in range(1, len(s) + 1):
                closed.update(combinations(s, r))
        top = max((len(s) for s in closed), default=0)
        by_dim = tuple(
            tuple(sorted(s for s in closed if len(s) == d + 1))
            for d in range(top)
        )
        self._by_dim = by_dim
        self._index = {s: i for level in by_dim for i, s in enumerate(level)}

    @property
    def dim(self):
        """Top dimension; -1 for the empty complex."""
        return len(self._by_dim) - 1

    def simplices(self, d):
        if 0 <= d < len(self._by_dim):
            return self._by_dim[d]
        return ()

    def n_simplices(self, d):
        return len(self.simplices(d))

    @property
    def vertex_ids(self):
        return tuple(s[0] for s in self.simplices(0))

    def __contains__(self, simplex):
        return tuple(simplex) in self._index

    def index_of(self, simplex):
        s = tuple(simplex)
        if s not in self._index:
            raise UnknownSimplexError(f"{s} is not a simplex of this complex")
        return self._index[s]

    def all_simplices(self):
        for level in self._by_dim:
            yield from level

    def euler_characteristic(self):
        return sum((-1) ** d * self.n_simplices(d) for d in range(self.dim + 1))

    def face_counts(self):
        return tuple(self.n_simplices(d) for d in range(self.dim + 1))

    def __eq__(self, other):
        return isinstance(other, Complex) and self._by_dim == other._by_dim

    def __hash__(self):
        return hash(self._by_dim)

    def __repr__(self):
        return f"Complex(dim={self.dim}, counts={self.face_counts()})"


def build_complex(generators):
    """Downward closure of the given vertex sets."""
    return Complex(generators)


def default_orientation(X):
    """Increasing-vertex orientation: +1 on every simplex."""
    return {s: 1 for s in X.all_simplices()}


def boundary_matrix(X, d, field, orient=None, row_order=None, col_order=None):
    """Matrix of the d-th boundary map.

    Rows run over the (d-1)-simplices and columns over the d-simplices, in
    the given orders (lexicographic by default).  Entry (i, j) is the signed
    coefficient of the i-th row chain in the boundary of the j-th column
    chain, under the orientation sign table.
    """
    if not (1 <= d <= X.dim):
        raise DimensionError(f"d={d} out of range 1..{X.dim}")
    if orient is None:
        orient = default_orientation(X)
    rows = tuple(row_order) if row_order is not None else X.simplices(d - 1)
    cols = tuple(col_order) if col_order is not None else X.simplices(d)
    if sorted(rows) != list(X.simplices(d - 1)):
        raise ValueError("row_order is not a permutation of the (d-1)-simplices")
    if sorted(cols) != list(X.simplices(d)):
        raise ValueError("col_order is not a permutation of the d-simplices")
    row_pos = {s: i for i, s in enumerate(rows)}
    z, one = field.zero(), field.one()
    data = [[z] * len(cols) for _ in range(len(rows))]
    for j, s in enumerate(cols):
        s_sign = orient[s]
        for t, f in faces(s):
            c = one if (t % 2 == 0) else field.neg(one)
            if s_sign * orient[f] < 0:
                c = field.neg(c)
            data[row_pos[f]][j] = c
    return FieldMatrix(field, len(rows), len(cols), data)


def betti_direct(X, field):
    """Betti numbers over the field, dimension by dimension.

    Uses beta_d = dim C_d - rank d_d - rank d_{d+1} with rank d_0 := 0 and
    rank above the top dimension := 0.  This is the brute-force oracle the
    compressed pipeline is checked against.
    """
    if X.dim < 0:
        return ()
    ranks = [0] * (X.dim + 2)
    for d in range(1, X.dim + 1):
        ranks[d] = field_rank(boundary_matrix(X, d, field))
    return tuple(
        X.n_simplices(d) - ranks[d] - ranks[d + 1] for d in range(X.dim + 1)
    )


def barycentric_subdivision(X):
    """Barycentric subdivision.

    Vertices of the result are the simplices of X, numbered in (dimension,
    lex) order; d-simplices are the chains s_0 < s_1 < ... < s_d under
    strict face inclusion.  Returns (subdivided complex, map from each old
    simplex to its barycenter vertex id).
    """
    vmap = {}
    for d in range(X.dim + 1):
        for s in X.simplices(d):
            vmap[s] = len(vmap)
    ending_at = {}
    for s in X.all_simplices():  # (dim, lex) order: faces come first
        chains = [(vmap[s],)]
        for r in range(1, len(s)):
            for fc in combinations(s, r):
                chains.extend(c + (vmap[s],) for c in ending_at[fc])
        ending_at[s] = chains
    all_chains = [c for chains in ending_at.values() for c in chains]
    return Complex(all_chains), vmap
