"""Weighted Fourier frames for the Cantor-4 measure.

Constructs the frames via a four-isometry representation on a dilated
fractal and numerically certifies every finitely checkable claim about
them: unitarity of the coefficient matrices, the isometry relations,
orthonormality of the generated family, the projection formula, Bessel and
Parseval partial-sum behavior, the refinement identity of the coefficient
energy function, the incompleteness of the degenerate weight family, and
the scale-3 obstruction.
"""

__version__ = "0.1.0"

from .atoms import Atom, FunctionSum, exponential, inner_product, norm, normalize, refine
from .cuntz import (
    CuntzRep,
    apply_S,
    apply_S_star,
    apply_word,
    gram_X4,
    s_word_one,
    verify_cuntz,
)
from .errors import (
    CapacityError,
    ContractError,
    DomainError,
    FrameLabError,
    InfeasibleParameters,
    UnsupportedShape,
)
from .filters import (
    FilterBank,
    filter_bank_from_A,
    g_map,
    hadamard_rho,
    little_m,
    mu3_nogo_certificate,
    rho_bank,
    solve_alpha,
)
from .frames import (
    PartialSumTrace,
    WeightSpec,
    WeightedExponential,
    bank_for_spec,
    frame_weight,
    h_partial,
    incompleteness_report,
    parseval_trace,
    project_V,
    projection_weight,
    verify_ruelle,
)
from .report import RunReport
from .transform import (
    TransformEvaluator,
    XCylinder,
    cis,
    cylinder_exp_integral,
    ifs_monte_carlo_integral,
    mu4_hat,
)
from .words import Word4, c_of_word, digit_counts, enumerate_X4, in_X4, word_of_index

__all__ = [
    "Atom",
    "CapacityError",
    "ContractError",
    "CuntzRep",
    "DomainError",
    "FilterBank",
    "FrameLabError",
    "FunctionSum",
    "InfeasibleParameters",
    "PartialSumTrace",
    "RunReport",
    "TransformEvaluator",
    "UnsupportedShape",
    "WeightSpec",
    "WeightedExponential",
    "Word4",
    "XCylinder",
    "apply_S",
    "apply_S_star",
    "apply_word",
    "bank_for_spec",
    "c_of_word",
    "cis",
    "cylinder_exp_integral",
    "digit_counts",
    "enumerate_X4",
    "exponential",
    "filter_bank_from_A",
    "frame_weight",
    "g_map",
    "gram_X4",
    "h_partial",
    "hadamard_rho",
    "ifs_monte_carlo_integral",
    "in_X4",
    "incompleteness_report",
    "inner_product",
    "little_m",
    "mu3_nogo_certificate",
    "mu4_hat",
    "norm",
    "normalize",
    "parseval_trace",
    "project_V",
    "projection_weight",
    "refine",
    "rho_bank",
    "s_word_one",
    "solve_alpha",
    "verify_cuntz",
    "verify_ruelle",
    "word_of_index",
]
