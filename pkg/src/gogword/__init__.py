"""Word problem solver for graphs of groups.

Normalization, middle derivations with the logarithmic driver, the naive
free-product baselines, and the oracle toolkit they rely on.
"""

from .baselines import gen_slow_many, gen_slow_one, many_iterations, one_iteration
from .config import load_schema, parse_schema, serialize_schema
from .derivation import InvariantViolation, SolveReport, reference_solve, solve
from .fixtures import load_fixture
from .normal_form import NormalWord, normalize
from .words import GroupSchema, SchemaError, Verdict, validate_schema

__all__ = [
    "GroupSchema", "InvariantViolation", "NormalWord", "SchemaError", "SolveReport", "Verdict",
    "gen_slow_many", "gen_slow_one", "load_fixture", "load_schema", "many_iterations", "normalize",
    "one_iteration", "parse_schema", "reference_solve", "serialize_schema", "solve", "validate_schema",
]
