"""Which rationals does a ternary quadratic form represent over Q?"""

from .arith import (Factorization, Rat, SquarefreeSplit, crt, factorize, inv_mod,
                    jacobi, legendre, sqrt_mod, squarefree_split)
from .decide import (IsotropicVector, Progression, Verdict, Witness,
                     excluded_progressions, integer_witness, is_represented,
                     legendre_isotropic, rational_witness, universal_over_Z)
from .errors import TernaryError
from .forms import (DiagonalForm, NormalizedForm, TernaryForm, diagonalize,
                    evaluate, normalize)
from .local import (ModSolution, PrimeObstruction, TwoAdicClass, lift_solution,
                    locally_solvable, prime_obstructions, represents_mod,
                    two_adic_classify)
from .oracle import (ResidueReport, brute_rational, crosscheck_progression,
                     residues_represented)

__version__ = "0.1.0"
