"""Exact homomorphism densities and the tensor-power counterexample to sparse quasirandomness."""

from .chromatic import IntegerPolynomial, chromatic_polynomial, eval_polynomial, expansion_coefficients
from .config import BudgetExceeded, Limits
from .graph import (
    Graph,
    GraphError,
    GraphFormatError,
    complete_graph,
    cycle_graph,
    named_graph,
    parse_graph,
    path_graph,
    serialize_graph,
    triangle_count,
)
from .highprec import MINUS_INFINITY, HighPrecisionValue, exp_value, log_rational
from .hom import (
    edge_density,
    hom_count,
    hom_count_brute,
    hom_count_dp,
    hom_density,
    injective_hom_count,
    normalized_density,
)
from .kernels import (
    SignedStepKernel,
    StepKernel,
    c4_deviation,
    cut_norm,
    kernel_density,
    lemma_check,
    rigidity_check,
)
from .limits import (
    LimitReport,
    density_asymptotics_check,
    edge_density_power,
    forcing_witness,
    limit_table,
    log_normalized_density,
    sample_gnp,
)
from .products import TensorPowerSpec, blow_up, materialize, tensor_product

__version__ = "0.1.0"
