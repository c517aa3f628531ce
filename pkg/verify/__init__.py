from verify.verdict import FAILS, HOLDS, INCONCLUSIVE, Verdict
from verify.checks import (
    check_2hyper,
    check_ifa,
    check_knowledge_consistency,
    check_local_correctness,
    check_pair_violation,
    check_prefix_equality,
    check_tb_ifa,
    model_check,
)
from verify.certify import CertificationReport, certify_end_to_end
