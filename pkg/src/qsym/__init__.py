"""qsym: desk-scale certification of quantum symmetries of folded cube graphs.

The package bundles five cooperating toolkits:

* ``graphs``        -- simple graphs, automorphism enumeration, disjoint pairs
* ``boolean_group`` -- Z_2^w, Walsh-Hadamard Fourier pair, folded cubes
* ``spectral``      -- closed-form folded-cube spectra and eigenprojections
* ``star_algebra``  -- magic-unitary witnesses over a matrix model
* ``so_twist``      -- the q = -1 orthogonal relation system, its bicharacter
                       twist, and the classical points acting on folded cubes

plus a JSON-reporting CLI (``qsym``).
"""

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    CapacityError,
    DimensionError,
    GraphFormatError,
    QsymError,
    UsageError,
)
from .graphs import (
    Graph,
    Permutation,
    are_disjoint,
    automorphisms,
    find_disjoint_pair,
    is_automorphism,
)
from .boolean_group import (
    FunctionVector,
    GROUP_BASIS,
    GroupWord,
    POINT_BASIS,
    cayley_folded_cube,
    folded_cube,
    fourier,
    inverse_fourier,
    tau_generators,
    walsh_matrix,
    walsh_transform,
)
from .spectral import (
    EigenData,
    EigenLevel,
    SpectrumReport,
    eigen_data,
    eigenprojection,
    eigenprojections,
    eigenvalue_of_bits,
    preserves_eigenspaces,
    verify_spectrum,
)
from .star_algebra import (
    MagicUnitary,
    RecoveryReport,
    WitnessReport,
    build_witness,
    certify_witness,
    classical_witness,
    haar_unitary,
    is_projection,
    op_norm,
    recovery_products,
    rep_free_product,
    spectral_projections,
)
from .so_twist import (
    Bicharacter,
    CheckReport,
    GradedMonomial,
    SignedPermMatrix,
    TwistedElement,
    abelian_points,
    all_signed_perm_matrices,
    bicharacter,
    chain_sign,
    classical_point_action,
    lemma_P_check,
    lemma_SO_bruteforce,
    lemma_SO_sides,
    lemma_sumzero_check,
    sample_orthogonal_reflection,
    sample_special_orthogonal,
    scalar_relations_defect,
    twisted_chain,
    twisted_product,
    twisted_relation_check,
)

__version__ = "0.1.0"
