# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

from .state import (
    ArgumentException,
    LabelException,
    SubsystemSet,
    PureState,
    DensityOperator,
    MarginalSet,
    read_state,
    write_state,
)
from .operations import (
    SchmidtDecomposition,
    partial_trace,
    reduced_matrix,
    apply_local_operator,
    schmidt_decompose,
    schmidt_compose,
    two_body_config,
    marginal_set,
    marginal_distance,
    fidelity,
    check_unitary,
    apply_local_unitaries,
)
