from automata.nba import Guard, Nba, Nfa, UcaAutomaton, lift, rename
from automata.emptiness import EmptinessCheck, is_empty, is_weak, lasso_member
from automata.operations import exists_project, pair_product, product, self_compose, union
from automata.translate import ltl_to_nba, safety_closure
from automata.safety import bad_prefix_nfa, complement_det, determinize_safety, finite_violation_nba
from automata.complement import complement_nba_bounded
