# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging

from enum import Enum
from dataclasses import dataclass, field

from udpcert.sampling import RandomSource, genericity_check
from udpcert.states import ArgumentException, PureState, reduced_matrix, schmidt_decompose

from .blocks import build_operator_blocks, resolve_config
from .compatibility import CompatibilitySystem, solve_compatibility
from .oracle import TorusObjective, WitnessResult, minimize_torus, torus_starts, verify_witness, commuting_witness
from .settings import CertifierSettings
from .system import assemble_linear_system, solve_nullspace

log = logging.getLogger("certifier")


class Verdict(str, Enum):
    UNIQUE = "UNIQUE"
    NOT_GENERIC = "NOT_GENERIC"
    NONUNIQUE_WITNESS = "NONUNIQUE_WITNESS"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class UdpCertificate:
    """
    The verdict of the certifier with all diagnostics and the settings used.
    """

    verdict: Verdict
    config: str
    bipartition: str
    third_pairs: tuple
    genericity: object = None
    span_dim: int = None
    nullspace_dim: int = None
    linear_rank: int = None
    system_shape: tuple = None
    compatibility: object = field(default=None, repr=False)
    oracle: object = field(default=None, repr=False)
    witness: WitnessResult = field(default=None, repr=False)
    settings: CertifierSettings = field(default=None, repr=False)

    @property
    def max_nontrivial_norm(self):
        return self.compatibility.max_nontrivial_norm if self.compatibility is not None else None

    def to_dict(self):
        return {
            "verdict": str(self.verdict),
            "config": self.config,
            "bipartition": self.bipartition,
            "third_pairs": list(self.third_pairs),
            "genericity": self.genericity,
            "span_dim": self.span_dim,
            "nullspace_dim": self.nullspace_dim,
            "linear_rank": self.linear_rank,
            "system_shape": list(self.system_shape) if self.system_shape is not None else None,
            "compatibility": self.compatibility,
            "oracle": self.oracle,
            "witness": self.witness if self.witness is not None and self.witness.found else None,
            "settings": self.settings,
        }


def _check_state(state):
    if not isinstance(state, PureState):
        raise ArgumentException("The certifier requires a pure state.")
    if state.num_parties != 4:
        raise ArgumentException(f"The certifier requires four parties, the state has {state.num_parties}.")
    if len(set(state.dims)) != 1:
        raise ArgumentException(f"The certifier requires equal local dimensions, got {list(state.dims)}.")


def certify(state, config="AB,CD,BD", settings=None, rng=None):
    """
    Decide whether the state is uniquely determined among pure states by the marginals of the configuration.
    The linear system and the compatibility equations are solved for the first third pair, the torus oracle
    uses all third pairs of the configuration.
    """
    _check_state(state)
    settings = settings or CertifierSettings()
    rng = rng if rng is not None else RandomSource(0)
    cc = resolve_config(state.labels, config)
    d = state.dims[0]
    common = dict(
        config=str(cc),
        bipartition=f"{cc.left}|{cc.right}",
        third_pairs=tuple(str(x) for x in cc.third_pairs),
        settings=settings,
    )

    sd = schmidt_decompose(state, (cc.left, cc.right), settings.rank_tol)
    report = genericity_check(sd, settings.gap_tol, settings.rank_tol)
    if not report.is_generic:
        witness = commuting_witness(state, sd, cc.pairs, rng, settings)
        verdict = Verdict.NONUNIQUE_WITNESS if witness.found else Verdict.NOT_GENERIC
        log.info(f"The state is not generic, the verdict is {verdict}.")
        return UdpCertificate(verdict, genericity=report, witness=witness, **common)

    blocks = [build_operator_blocks(sd, cc.keep(x)) for x in cc.third_pairs]
    system = assemble_linear_system(blocks[0], cc.third_pairs[0])
    basis = solve_nullspace(system, settings.kernel_tol)
    compatibility = solve_compatibility(basis, sd.coefficients, settings.restarts, rng, settings)

    objective = TorusObjective(
        [b.operators(state.labels) for b in blocks],
        sd.coefficients,
        [reduced_matrix(state.amplitudes, state.dims, x.indices(state.labels)) for x in cc.third_pairs],
    )
    oracle = minimize_torus(objective, torus_starts(sd.coefficients.size, settings.grid_restarts, rng), settings)

    # nontrivial phases from either path are verified against the whole configuration
    csys = CompatibilitySystem(basis, sd.coefficients)
    candidates = [("compatibility", csys.phases(x)) for x in compatibility.nontrivial]
    candidates += [("oracle", p) for p in oracle.nontrivial]
    witness = None
    for k, (source, phases) in enumerate(candidates):
        sibling = sd.reconstruct(phases)
        ok, f, mismatch = verify_witness(state, sibling, cc.pairs, settings)
        if ok:
            witness = WitnessResult(sibling, f, mismatch, k + 1, source)
            break

    span_dim = blocks[0].span_dim(settings.span_tol)
    algebraic_unique = basis.dim == d * d - 1 and compatibility.only_trivial
    if witness is not None:
        verdict = Verdict.NONUNIQUE_WITNESS
    elif algebraic_unique and oracle.is_trivial:
        verdict = Verdict.UNIQUE
    else:
        verdict = Verdict.INCONCLUSIVE
    log.info(
        f"The verdict is {verdict} (span={span_dim}, kernel={basis.dim}, "
        f"oracle residual={oracle.residual:.3e})."
    )
    return UdpCertificate(
        verdict,
        genericity=report,
        span_dim=span_dim,
        nullspace_dim=basis.dim,
        linear_rank=basis.rank,
        system_shape=system.shape,
        compatibility=compatibility,
        oracle=oracle,
        witness=witness,
        **common,
    )
