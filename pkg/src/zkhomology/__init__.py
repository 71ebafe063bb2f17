"""Field homology of simplicial complexes with a cyclic symmetry, computed
from their quotient complexes.

Given a complex X with a regular Z_k action, the quotient complex together
with the isotropy subgroups of chosen lifts and the transfer cosets of
codimension-1 face pairs determines the homology of X over any field: the
boundary data compresses into matrices over the group ring F[Z_k], whose
Smith normal form yields the boundary ranks of X one circulant block at a
time.  A brute-force direct oracle is included for verification.
"""

from .exact import (
    GF,
    QQ,
    FieldMatrix,
    Poly,
    field_rank,
    parse_field,
    poly_gcd,
    snf_over_polys,
)
from .simplicial import (
    Complex,
    barycentric_subdivision,
    betti_direct,
    boundary_matrix,
    build_complex,
)
from .actions import (
    CyclicAction,
    Subgroup,
    check_regularity,
    compatible_ordering,
    coset_ordering,
    index_reducing,
    is_regular,
    lex_lift,
    lex_max_lift,
    quotient,
    regularize,
    trivial_action,
    validate_action,
)
from .groupring import (
    GroupRingElem,
    GroupRingMatrix,
    circulant_rank,
    rho,
    rho_extend,
    sigma,
)
from .transfer import (
    IsotropyTriple,
    build_complex_of_groups,
    build_triple,
    coset_map,
    extended_transfer,
    transfer_matrix,
)
from .ring_snf import SnfDiagonal, snf_over_R
from .pipeline import (
    CompressedResult,
    compatible_boundary,
    compatible_orientations,
    compressed_betti,
    compressed_rank,
    compressed_result,
    g_boundary_matrix,
    isotropy_expansion,
    verify_expansion_lemma,
)

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "FieldMatrix", "Poly", "field_rank", "parse_field",
    "poly_gcd", "snf_over_polys",
    "Complex", "barycentric_subdivision", "betti_direct", "boundary_matrix",
    "build_complex",
    "CyclicAction", "Subgroup", "check_regularity", "compatible_ordering",
    "coset_ordering", "index_reducing", "is_regular", "lex_lift",
    "lex_max_lift", "quotient", "regularize", "trivial_action",
    "validate_action",
    "GroupRingElem", "GroupRingMatrix", "circulant_rank", "rho", "rho_extend",
    "sigma",
    "IsotropyTriple", "build_complex_of_groups", "build_triple", "coset_map",
    "extended_transfer", "transfer_matrix",
    "SnfDiagonal", "snf_over_R",
    "CompressedResult", "compatible_boundary", "compatible_orientations",
    "compressed_betti", "compressed_rank", "compressed_result",
    "g_boundary_matrix", "isotropy_expansion", "verify_expansion_lemma",
]
