"""Homotopy theory of words over an alphabet with involution.

Words are approximated by nanowords (Gauss words over a projected letter
set), studied up to moves modeled on the Reidemeister moves, and separated
by a stack of computable invariants: the group invariant gamma,
self-linking, linking pairings, tricolorings, the lambda polynomial, and
characteristic sequences from free keis.  A bounded bidirectional search
provides equivalence witnesses, and a classification harness combines both
directions into certified equivalence tables.
"""

from .alphabet import DIAGONAL, AlphabetSpec, alpha_star, alpha_zero, load_alphabet, make_alphabet, parse_alphabet
from .groups import Orbits, freeze
from .linking import (
    InterlacementMatrix,
    SelfLinkingReport,
    gamma,
    interlacement,
    letter_class,
    monoliteral_distinguish,
    orbit_table,
    self_linking,
)
from .moves import (
    MoveInstance,
    SearchOutcome,
    applicable_moves,
    apply_move,
    derived_move_check,
    equivalent_bounded,
    expand_macro,
    is_contractible_bounded,
    replay,
)
from .pairing import (
    AlphaPairing,
    build_pairing,
    circ,
    find_annihilating,
    find_twins,
    genus_lower_bound,
    linking,
    norm_lower_bound,
    pairing_isomorphic,
    reduce_primitive,
)
from .linear import (
    beta_set,
    lambda_by_elimination,
    lambda_by_paths,
    lambda_graded,
    presentation_matrix,
    tricolor_census,
)
from .kei import (
    FreeKei,
    characteristic_sequence,
    check_kei_axioms,
    emit_kei_presentation,
    kei_output,
)
from .words import (
    CanonicalNanoword,
    EtaleWord,
    Nanoword,
    canonical_form,
    desingularize,
    empty_nanoword,
    from_plain_word,
    is_isomorphic,
    nanoword,
    opposite,
    parse_word_literal,
    product,
)

__all__ = [name for name in dir() if not name.startswith("_")]
