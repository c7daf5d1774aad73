"""qrel: exact q-expansions of modular objects and exhaustive verification
of the class number relations, trace formulas, and combinatorial
identities they satisfy.

All arithmetic is exact: rationals via fractions.Fraction, real-quadratic
values via qrel.scalars.QuadExt, and pi-multiples via qrel.scalars.PiScalar.
"""

from .arith import (DirichletCharacter, hurwitz, hurwitz_cache,
                    kronecker_character, lambda_k, sigma_k)
from .holproj import (BracketSpec, correction_b, delta_indef, kappa,
                      lambda_indef, lambda_pa, pell_orbit, rankin_cohen)
from .qseries import QSeries
from .relations import RelationReport, run_check, verify_all
from .scalars import PiScalar, QuadExt

__version__ = "1.0.0"

__all__ = [
    "BracketSpec", "DirichletCharacter", "PiScalar", "QSeries", "QuadExt",
    "RelationReport", "correction_b", "delta_indef", "hurwitz",
    "hurwitz_cache", "kappa", "kronecker_character", "lambda_indef",
    "lambda_k", "lambda_pa", "pell_orbit", "rankin_cohen", "run_check",
    "sigma_k", "verify_all", "__version__",
]
