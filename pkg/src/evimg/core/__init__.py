"""Category contract, generic algorithms, verifiers and oracles."""

from .algorithms import (
    eventual_image_chain,
    eventual_image_idempotent_power,
    idempotent_power_search,
    image_chain,
    initial_algebra_dual,
    power,
    split_idempotent,
    terminal_coalgebra,
)
from .category import (
    FAIL,
    HYPOTHESIS_FAILS,
    NOT_APPLICABLE,
    PASS,
    SKIPPED,
    CategoryInstance,
    ContractViolation,
    Endo,
    EventualImageData,
    GuardExceeded,
    Quotient,
    Subobject,
    Verdict,
    all_of,
)
from .checks import (
    algorithms_agree,
    check_coalgebra_agrees,
    check_commuting_product,
    check_induced,
    check_quotient_agrees,
    check_splitting,
    check_timescale,
    check_vu_uv,
    compare_eventual_images,
    eventual_equivalence_witness,
    induced_map,
    shift_equivalence_verify,
)
from .oracles import limit_colimit_oracle, subobject_oracle, universal_property_oracle
