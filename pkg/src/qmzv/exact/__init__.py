from qmzv.exact.bernoulli import bernoulli, bernoulli_list
from qmzv.exact.laurent import (
    LaurentSeries,
    exp_ratio_power,
    laurent_add,
    laurent_constant_term,
    laurent_mul,
    laurent_sum,
    pole_part,
    regular_part,
)
from qmzv.exact.ratfunc import (
    RatFunc,
    format_poly,
    parse_poly,
    ratfunc_add,
    ratfunc_eval,
    ratfunc_mul,
    ratfunc_neg,
)

__all__ = [
    "LaurentSeries",
    "RatFunc",
    "bernoulli",
    "bernoulli_list",
    "exp_ratio_power",
    "format_poly",
    "laurent_add",
    "laurent_constant_term",
    "laurent_mul",
    "laurent_sum",
    "parse_poly",
    "pole_part",
    "ratfunc_add",
    "ratfunc_eval",
    "ratfunc_mul",
    "ratfunc_neg",
    "regular_part",
]
