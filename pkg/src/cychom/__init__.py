"""Exact homology of square-zero polynomial quotients.

The algebra is A = k[x1, ..., xd]/(x1, ..., xd)^2.  Everything is graded
by word weight, and each weight-w piece reduces to the cyclic group of
order w acting on weight-w words by signed rotation.  Two independent
engines compute each theory: a chain-level route through Smith normal
form and a closed-form route through necklace counts.

>>> from cychom import hc_weight_closed, integers
>>> hc_weight_closed(3, 1, degrees=(2, 3)).group_at(3)
FgAbelianGroup(free_rank=0, torsion=(3,))
"""

from .errors import (
    BudgetExceeded,
    CompositionNotZero,
    DimensionMismatch,
    InsufficientWeightCutoff,
)
from .groups import CoefficientRing, FgAbelianGroup, uct_apply
from .snf import (
    SnfDecomposition,
    cokernel_group,
    homology_of_pair,
    kernel_basis,
    mod_p_homology,
    smith_normal_form,
    solve_columns,
)
from .words import (
    CycleFamily,
    Word,
    cycle_family,
    default_budget,
    enumerate_families,
    necklace_count,
)
from .complexes import (
    GradedComplex,
    cyclic_bicomplex,
    cyclic_operator,
    ext_complex,
    hochschild_weight_complex,
    norm_operator,
    tor_complex,
    total_complex,
    truncation_homology,
)
from .engines import (
    Band,
    ConnectingMap,
    HomologyTable,
    THEORIES,
    WeightedHomologyResult,
    assemble_total,
    compute_weight,
    hc_weight_closed,
    hc_weight_direct,
    hcminus_weight_closed,
    hcminus_weight_direct,
    hh_weight,
    hp_weight,
    tate_cohomology,
)

__version__ = "0.1.0"

integers = CoefficientRing.integers
rationals = CoefficientRing.rationals
integers_mod = CoefficientRing.integers_mod

__all__ = [
    "Band",
    "BudgetExceeded",
    "CoefficientRing",
    "CompositionNotZero",
    "ConnectingMap",
    "CycleFamily",
    "DimensionMismatch",
    "FgAbelianGroup",
    "GradedComplex",
    "HomologyTable",
    "InsufficientWeightCutoff",
    "SnfDecomposition",
    "THEORIES",
    "WeightedHomologyResult",
    "Word",
    "assemble_total",
    "cokernel_group",
    "compute_weight",
    "cycle_family",
    "cyclic_bicomplex",
    "cyclic_operator",
    "default_budget",
    "enumerate_families",
    "ext_complex",
    "hc_weight_closed",
    "hc_weight_direct",
    "hcminus_weight_closed",
    "hcminus_weight_direct",
    "hh_weight",
    "hochschild_weight_complex",
    "homology_of_pair",
    "hp_weight",
    "integers",
    "integers_mod",
    "kernel_basis",
    "mod_p_homology",
    "necklace_count",
    "norm_operator",
    "rationals",
    "smith_normal_form",
    "solve_columns",
    "tate_cohomology",
    "tor_complex",
    "total_complex",
    "truncation_homology",
    "uct_apply",
    "__version__",
]
