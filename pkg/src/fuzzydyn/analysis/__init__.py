"""Return sets, dynamical checks and witness transfers."""

from .balls import BASE, FUZZY, HYPER, BallSpec, as_ball, contains
from .checks import (
    CheckReport,
    PairVerdict,
    check_A_recurrent,
    check_A_transitive,
    check_devaney,
    check_periodic_density,
    check_point_recurrent,
    check_point_transitive,
    periodic_point_in,
    transitivity_return_sets,
)
from .returns import (
    check_witness,
    ell_return_set,
    ell_return_set_with_witnesses,
    hyper_joint_witness,
    joint_witness,
    point_return_set,
    return_set,
    return_set_with_witnesses,
    witness_for,
)
from .specification import (
    SpecInstance,
    build_spec_witness,
    fuzzy_spec_instance,
    periodic_near,
    project_spec_witness,
    shift_period,
    verify_specification,
)
from .transfers import (
    TransferWitness,
    choose_alpha,
    joint_quantization,
    lift_transitivity_witness,
    project_periodic,
    project_recurrence_witness,
    project_transitivity_witness,
)
