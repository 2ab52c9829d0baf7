"""Exact graded free resolutions of finite-length modules presented by
divided-power matrices: annihilators and quotient modules, dual
pairings, selfdual resolution constructions, symmetry-preserving
minimization, Betti tables, and characteristic-2 parity experiments.
"""

from .dpmatrix import (
    DPMatrix,
    GradedIdealWitness,
    annihilator,
    ideal_witness_from_generators,
    is_symmetric,
    present,
    quotient_module,
    quotient_module_with_generators,
    symmetric_presentation,
)
from .dpm import parse_dpmatrix, render_dpmatrix
from .errors import (
    ConfigurationError,
    DpresError,
    HomogeneityError,
    MathPreconditionError,
    ParseError,
    SymmetricMinimizationUnsupported,
    UsageError,
)
from .fields import QQ, Field
from .flmodule import (
    FiniteLengthModule,
    GradedPairing,
    ModuleMap,
    check_pairing,
    direct_sum,
    dual_module,
    find_isomorphism,
    gorenstein_pairing,
    hilbert_function,
    hom_space,
    min_generators,
    trivial_module,
    twist_module,
    zero_module,
)
from .freemod import Augmentation, FreeComplex, FreeModule, GradedFreeMatrix
from .homology import (
    BettiTable,
    betti_table,
    char2_constraints,
    cokernel_module,
    herzog_kuhl,
    is_minimal,
    minimize,
    minimize_symmetric,
    obstructed_degree_sequence,
    tor_betti,
    verify_strands,
)
from .koszul import (
    alpha,
    alpha_square_commutes,
    ext_contract,
    koszul_complex,
    middle_matrix,
    middle_symmetry,
    subsets,
    wedge_sign,
)
from .nielsen import (
    beta,
    beta_inverse,
    middle_symmetry_defect,
    nielsen_complex,
    nielsen_II_resolution,
    nielsen_IIa_resolution,
    selfdual_resolution,
)
from .ring import (
    RingSpec,
    contract,
    dp_monomials_of_degree,
    dp_pairing,
    monomials_of_degree,
    standard_ring,
)

__version__ = "0.1.0"
