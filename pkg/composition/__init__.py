from composition.system import (
    ComposedSystem, compose_hyper, compose_local, hyper_interface, synchronous_product,
)
from composition.knowledge import extract_local_strategy, knowledge_set
from composition.locality import LocalityResult, check_locality
from composition.decoder import ClassDecoder, build_class_decoder
from composition.practical import compose_practical
from composition.bundle import HYPER, PRACTICAL, SolutionBundle, load_bundle
