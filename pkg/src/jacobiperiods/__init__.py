"""Jacobi cusp forms, theta decomposition, Weil-type representations,
Eichler period cocycles and partial L-value cocycles on SL(2,Z)."""

__version__ = "0.1.0"

from .jacobi import (JacobiForm, LatticeElement, build_testform,
                     check_cuspidal, slash_elliptic, slash_jacobi,
                     slash_modular)
from .lfunctions import (PartialLSpec, cocycle_representative, lvalue_table,
                         partial_L, partial_L_integral, verify_main3)
from .modgroup import (Cusp, GroupElement, MultiplierSystem, dedekind_sum,
                       decompose_word, eta_multiplier, principal_power)
from .periods import (PElement, PeriodCocycle, eichler_integral,
                      incomplete_gamma_upper, slash_p)
from .poincare import (CocycleInput, CosetSet, construct_F, eisenstein_psi,
                       generalized_poincare, km_poincare)
from .cohomology import (JacobiCocycle, Section5Cocycle,
                         jacobi_cocycle_check, lift_cocycle,
                         section5_obstruction)
from .series import (FourierSeries, JacobiSeries, eta_series,
                     series_from_json, series_to_json)
from .thetadec import (ThetaSeries, VVForm, decompose, recompose,
                       theta_series, theta_transform_check,
                       vv_transform_check)
from .weilrep import (RepresentationSpec, build_generators, chi_double_prime,
                      relation_check, rep_element)
