"""Finite-scale computations for filter-relative central sets.

On a finite semigroup every ultrafilter is principal, so the algebra of the
Stone-Čech compactification collapses onto the Cayley table: minimal ideals,
the kernel, idempotents and the filter-relative largeness notions are all
decidable here.  Statements about (N,+) are checked inside finite windows,
and the constructive proofs are run as witness extractors.
"""

from .errors import *  # noqa: F401,F403
from .semigroup import (
    ElementSet,
    FiniteSemigroup,
    INTEGERS,
    enumerate_semigroups,
    format_semigroup,
    is_subgroup,
    parse_semigroup,
    translate_preimage,
    validate_table,
)
from .ideals import decompose, group_component, idempotents, kernel, minimal_ideals, sub_kernel
from .largeness import (
    CancelToken,
    JWitness,
    SequenceFamily,
    Status,
    Verdict,
    eval_x,
    find_j_witness,
    fp_set,
    is_central,
    is_ip_r_star_bounded,
    is_j_set_bounded,
    is_piecewise_syndetic,
    is_syndetic,
    is_thick,
    zfp_k,
)
from .filters import (
    FilterBase,
    closure_set,
    f_sub_ip_check,
    filter_from_ip_sequence,
    good_family_from_residues,
    is_F_central,
    is_F_good_bounded,
    is_F_IP,
    is_F_J_bounded,
    is_idempotent_filter,
    is_pws_F_syndetic,
)
from .hales_jewett import hj_number, line_free_coloring, find_mono_line
from .window import classify_window, cst_witness_commutative, parse_window_set, verify_cst_chain
from .witness import (
    AmbientGroup,
    Subgroup,
    cst_build,
    cst_verify,
    ipr_star_extract,
    j_to_ipstar_extract,
    j_witness_via_hj,
    star_set,
)
from .homomorphisms import (
    Homomorphism,
    enumerate_homomorphisms,
    is_good_homomorphism,
    preimage_lemma_check,
    sweep_homomorphisms,
    verify_preservation,
)

__version__ = "0.1.0"
