"""Numbers-game laboratory: firing dynamics on amplitude-matrix graphs,
reduced words, root systems, and diagram classification."""

from .adjacency import (
    AdjacencyReport,
    Verdict,
    adjacency_free_fundamentals,
    expected_fundamentals,
    position_is_adjacency_free,
    quotient_is_fully_commutative,
    record_is_adjacency_free,
)
from .families import FamilyTag, classify, finite_type, template
from .game import (
    ConvergenceReport,
    GameRecord,
    PumpScheme,
    Status,
    check_strong_convergence,
    default_step_cap,
    dual_apply,
    enumerate_games,
    fire,
    fireable,
    four_cycle_step,
    loop_divergence,
    play,
)
from .graphs import EGCMGraph, ONPath, validate_matrix
from .roots import (
    LongestWordReport,
    RootSystem,
    act,
    bilinear_form,
    f_bounds,
    f_value,
    generate_root_system,
    inversion_set,
    longest_word_report,
    positive_multiples,
    reflect,
    root_functionals,
    simple_root,
)
from .words import (
    GroupElement,
    GroupTable,
    QuotientTable,
    commutativity_classes,
    coset_decompose,
    element_of,
    enumerate_group,
    enumerate_quotient,
    is_fully_commutative,
    is_reduced,
    longest_element,
    reduced_words,
    simplify,
    tits_equal,
)

__version__ = "0.1.0"
