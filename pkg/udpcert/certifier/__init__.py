# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

from .settings import CertifierSettings
from .blocks import (
    CertifierConfig,
    NotGenericException,
    OperatorBlocks,
    UnsupportedConfigException,
    build_operator_blocks,
    gell_mann,
    resolve_config,
)
from .system import (
    GammaLinearSystem,
    NullspaceBasis,
    assemble_linear_system,
    index_pairs,
    induced_gammas,
    pack,
    unpack,
    solve_nullspace,
)
from .compatibility import (
    CompatibilityResult,
    CompatibilitySystem,
    newton,
    normalized_variables,
    pair_identity_residual,
    triple_identity_residual,
    solve_compatibility,
)
from .oracle import (
    OracleResult,
    TorusObjective,
    WitnessResult,
    coefficient_groups,
    minimize_torus,
    torus_oracle,
    verify_witness,
    commuting_witness,
    wrap,
)
from .certify import UdpCertificate, Verdict, certify
