"""Step fuzzy sets, fuzzy metrics and finite-scale dynamics checks.

Submodules: :mod:`space`, :mod:`fuzzy`, :mod:`metrics`, :mod:`dynamics`,
:mod:`families`, :mod:`analysis`, plus :mod:`cli` for the command line.
"""

__version__ = "0.1.0"

from .errors import BudgetError, ContractError, NormalityError, UnsupportedError, UsageError
from .fuzzy import (
    QuantizationResult,
    StepFuzzySet,
    alpha_level,
    from_characteristic,
    from_max_combination,
    gen_random,
    membership,
    quantize,
)
from .metrics import d_endo, d_inf, d_sendo, d_skorokhod, endo_oracle, sendo_oracle, skorokhod_oracle
from .space import (
    Circle,
    CirclePoint,
    CompactSet,
    FiniteMetric,
    FinitePoint,
    ShiftPoint,
    ShiftSpace,
    distance,
    hausdorff,
    within_thickening,
)
