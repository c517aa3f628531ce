from infoflow.compatibility import CompatibilityAutomaton, build_compatibility_automaton, delta_member
from infoflow.ifa import IfaAutomaton, build_ifa_automaton
from infoflow.tb_dist import TbDistAutomaton, build_tb_dist_automaton, lambda_member
from infoflow.tb_ifa import TbIfaAutomaton, build_tb_ifa_automaton
from infoflow.locality import delivery_assumption, hyper_objective, locality_violation_automaton
from infoflow.classes import InfoClass, extract_info_classes
from infoflow.uniformity import UniformityVerdict, check_uniformity_capped
from infoflow.component_spec import (
    ComponentSpec, RelativizedSpec, build_component_spec, relativize_spec,
)
