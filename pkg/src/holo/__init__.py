"""Regular subgroups normal in the holomorph of a finite p-group of
nilpotence class at most two (p odd), the subset isomorphic to the group,
and the quotient T(G) of the normalizer of the holomorph acting on them.

The public surface re-exported here:

  presentations  preset groups (gp, hp, free class-two exponent-p, abelian)
  groups         verified multiplication tables and elementwise helpers
  automorphisms  Aut(G) enumeration and isomorphism search
  holomorph      gamma functions, circle groups, J(G) and H(G)
  deltas         the bilinear correspondence and its solution spaces
  tgroup         theta representatives, T(G), power and (d, s) families
  cache          on-disk automorphism cache
  repro          expected-values harness
"""

from __future__ import annotations

from .automorphisms import (
    AutGroup,
    automorphism_group,
    free_aut_generators,
    isomorphism_search,
    table_isomorphism,
)
from .cache import get_auts, load_aut, store_aut
from .deltas import (
    BilinearDelta,
    SectionSpace,
    commutator_delta,
    delta_from_gamma,
    enumerate_deltas,
    gamma_from_delta,
    jc_from_deltas,
    symmetric_delta_basis,
    symmetric_delta_space,
)
from .errors import (
    CacheCorrupt,
    ClosureFailure,
    HoloError,
    HypothesisViolated,
    InconsistentPresentation,
    MismatchFound,
    NoIsomorphism,
    NotAGroup,
    NotInNHol,
    NotNormal,
    OrderCapExceeded,
    SearchBudgetExceeded,
    ShapeMismatch,
    UnsupportedModuli,
    UnsupportedPreset,
)
from .groups import GroupTable, abelian_basis, compose
from .holomorph import (
    GammaFunction,
    HolElement,
    RegularSubgroup,
    build_regular_subgroup,
    circle_table,
    commutator_of_nu_check,
    enumerate_gammas_generic,
    eqcond_check,
    formulas_check,
    gamma_hypotheses_hold,
    hc_set,
    hol_inv,
    hol_mul,
    hol_perm,
    hol_pair_checks,
    is_normal_in_hol,
    jc_set,
    nu_iso_check,
    nu_perms,
    powers_check,
)
from .presentations import ClassTwoPresentation, build_group, preset
from .repro import run_all, run_suite
from .tgroup import (
    TGroup,
    ThetaClass,
    TReport,
    agl1_table,
    analyze,
    build_t_group,
    extract_gamma_rows,
    gamma_from_theta,
    power_theta_family,
    t_action_check,
    theta_delta_family,
    theta_for,
    theta_from_symmetric_delta,
    theta_two_param_family,
)

__version__ = "0.1.0"
