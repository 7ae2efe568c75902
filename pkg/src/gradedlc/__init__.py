"""Local cohomology of squarefree monomial ideals in a ℤⁿ-graded polynomial ring.

Modules are stored by sign pattern: the degree-``a`` piece of ``H^i_I(R)``
depends only on ``{j : a_j < 0}``.  On top of that representation the
package computes Ext against ``R/J``, Bass numbers at monomial primes,
injective and support dimensions, cofiniteness verdicts and
Mayer–Vietoris sequences, and checks all of it against a brute-force
oracle working degree by degree.
"""

from __future__ import annotations

from .combinatorics import (MonomialPrime, RingConfig, SquarefreeMonomialIdeal, dim_quotient,
                            height_and_bigheight, ideal_sum, intersect, minimal_primes, normalize)
from .engine import (PatternModule, cech_complex, injective_hull, invert_variables,
                     local_cohomology, local_cohomology_dims, local_cohomology_of, module_equal,
                     ring_module, zero_module)
from .errors import (BudgetExceeded, GradedLCError, IdealError, NotComputable, ParseError,
                     PreconditionError, ZeroModuleError)
from .invariants import (associated_primes, bass_number, bass_table, cohomological_dimension,
                         ext_against, injective_dimension, is_cofinite, is_finitely_generated,
                         resolution_shape, support_dimension, taylor_complex)
from .mayer_vietoris import mayer_vietoris_check
from .oracle import Box, boxed_ext, boxed_local_cohomology, cross_validate
from .parser import format_ideal, ideal_from_text, parse_ideal

__version__ = "0.1.0"
