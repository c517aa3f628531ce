from spec_model.ltl import format_ltl, simplify, to_nnf
from spec_model.ltl_parser import parse_ltl
from spec_model.semantics import eval_ltl
from spec_model.words import LassoWord, combine, lasso, pair_word, project, split_pair
from spec_model.architecture import (
    Architecture, SystemSpec, Variable, parse_architecture, parse_system_spec,
)
