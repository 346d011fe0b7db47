"""Exact renormalised q-MZVs at negative arguments via Birkhoff decomposition."""

from qmzv.characters import (
    CharacterTable,
    Mode,
    birkhoff,
    c_coeff,
    compute_psi,
    convolve,
    psi,
)
from qmzv.errors import (
    EmptyWord,
    InsufficientTruncation,
    PoleAtT,
    QMZVError,
    ZeroIndexLetter,
    ZeroLeadingIndex,
)
from qmzv.exact import LaurentSeries, RatFunc, bernoulli
from qmzv.renorm import (
    RenormResult,
    eval_renorm,
    eval_renorm_complex,
    mero_oracle,
    renormalised_mzv,
    table,
)

__version__ = "0.1.0"

__all__ = [
    "CharacterTable",
    "EmptyWord",
    "InsufficientTruncation",
    "LaurentSeries",
    "Mode",
    "PoleAtT",
    "QMZVError",
    "RatFunc",
    "RenormResult",
    "ZeroIndexLetter",
    "ZeroLeadingIndex",
    "bernoulli",
    "birkhoff",
    "c_coeff",
    "compute_psi",
    "convolve",
    "eval_renorm",
    "eval_renorm_complex",
    "mero_oracle",
    "psi",
    "renormalised_mzv",
    "table",
]
