# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import dataclasses
import logging

import numpy as np

from dataclasses import dataclass, field

from udpcert.certifier import CertifierSettings, Verdict, certify
from udpcert.sampling import RandomSource, as_generator, default_labels, haar_state
from udpcert.states import (
    ArgumentException,
    PureState,
    SubsystemSet,
    fidelity,
    marginal_distance,
    marginal_set,
    partial_trace,
    schmidt_decompose,
)

PAIRS = ("AB", "CD", "BD")
MAX_PARTIES = 6

log = logging.getLogger("corollary")


@dataclass(frozen=True)
class CorollarySettings:
    gap_tol: float = 1e-8
    fidelity_tol: float = 1e-8
    block_tol: float = 1e-10
    perturbation_tol: float = 1e-6

    def __post_init__(self):
        for f in dataclasses.fields(self):
            if getattr(self, f.name) < 0:
                raise ValueError(f"The setting '{f.name}' must not be negative.")

    def to_dict(self):
        return dataclasses.asdict(self)


def extended_config(labels):
    """
    The pairs AB, CD and BD, each joined with the parties beyond the first four.
    """
    rest = list(labels[4:])
    return [SubsystemSet.parse(list(p) + rest, labels) for p in PAIRS]


def _terms(sd):
    return np.flatnonzero(sd.coefficients > 0)


def phase_locking_mismatch(state, sd, phases, config=None):
    """
    The marginal distance between the state and the reconstruction sum_i sqrt(lambda_i) exp(i phi_i)|psi_i>|i>
    over the extended configuration; `phases` are given for the nonzero Schmidt terms.
    """
    terms = _terms(sd)
    phases = np.asarray(phases, dtype=float)
    if phases.shape != terms.shape:
        raise ArgumentException(f"Expected {terms.size} phases, got {phases.size}.")
    full = np.zeros(sd.coefficients.size)
    full[terms] = phases
    config = config or extended_config(state.labels)
    return marginal_distance(marginal_set(state, config), marginal_set(sd.reconstruct(full), config))


def offdiagonal_block(marginal, vectors, i, j):
    """
    Return <i|rho|j> with |i>, |j> the columns of `vectors` on the trailing parties of the marginal.
    """
    de = vectors.shape[0]
    dp = marginal.matrix.shape[0] // de
    r = marginal.matrix.reshape(dp, de, dp, de)
    return np.einsum("e,aebf,f->ab", np.conj(vectors[:, i]), r, vectors[:, j])


@dataclass(frozen=True, eq=False)
class CorollaryReport:
    verdict: Verdict
    n: int
    coefficients: np.ndarray
    certificates: tuple = field(default=(), repr=False)
    extraction_error: float = None
    injected_phases: np.ndarray = None
    recovered_phases: np.ndarray = None
    block_residual: float = None
    fidelity: float = None
    mismatch: float = None
    perturbation_mismatch: float = None
    settings: CorollarySettings = field(default=None, repr=False)
    certifier_settings: CertifierSettings = field(default=None, repr=False)
    state: PureState = field(default=None, repr=False)
    schmidt: object = field(default=None, repr=False)

    @property
    def unique(self):
        return self.verdict == Verdict.UNIQUE

    def phase_locking_mismatch(self, phases):
        return phase_locking_mismatch(self.state, self.schmidt, phases)

    def to_dict(self):
        return {
            "verdict": str(self.verdict),
            "n": self.n,
            "coefficients": self.coefficients,
            "constituents": [str(c.verdict) for c in self.certificates],
            "extraction_error": self.extraction_error,
            "injected_phases": self.injected_phases,
            "recovered_phases": self.recovered_phases,
            "block_residual": self.block_residual,
            "fidelity": self.fidelity,
            "mismatch": self.mismatch,
            "perturbation_mismatch": self.perturbation_mismatch,
            "settings": self.settings,
            "certifier_settings": self.certifier_settings,
        }


def corollary_check(n, rng, state=None, settings=None, certifier_settings=None):
    """
    Check that a pure n-qubit state is determined by the marginals of AB, CD and BD extended by the parties
    beyond the first four. The state is split as sum_i sqrt(lambda_i)|psi_i>|i> over the first four parties
    and the rest, every constituent |psi_i> is certified from the pair marginals extracted from the diagonal
    blocks and the unknown phases of the constituents are locked by the off-diagonal blocks.
    """
    settings = settings or CorollarySettings()
    certifier_settings = certifier_settings or CertifierSettings()
    rng = rng if rng is not None else RandomSource(0)
    g = as_generator(rng)
    if state is None:
        if n < 5 or n > MAX_PARTIES:
            raise ArgumentException(f"The number of parties must be between 5 and {MAX_PARTIES}, got {n}.")
        state = haar_state((2,) * n, g, default_labels(n))
    n = state.num_parties
    if n < 5 or n > MAX_PARTIES:
        raise ArgumentException(f"The number of parties must be between 5 and {MAX_PARTIES}, got {n}.")

    labels = state.labels
    sd = schmidt_decompose(state, (labels[:4], labels[4:]), certifier_settings.rank_tol)
    terms = _terms(sd)
    lambdas = sd.coefficients[terms]
    common = dict(
        n=n,
        coefficients=lambdas,
        settings=settings,
        certifier_settings=certifier_settings,
        state=state,
        schmidt=sd,
    )
    if lambdas.size > 1 and np.min(-np.diff(lambdas)) <= settings.gap_tol:
        log.info("The spectrum of the remaining parties is degenerate, the verdict is NOT_GENERIC.")
        return CorollaryReport(Verdict.NOT_GENERIC, **common)

    config = extended_config(labels)
    marginals = marginal_set(state, config)
    vectors = sd.right_basis
    constituents = [PureState.create(labels[:4], state.dims[:4], sd.left_basis[:, i]) for i in terms]

    # the pair marginals of the constituents from the diagonal blocks
    extraction_error = 0.0
    for (s, rho), k in ((x, k) for x in marginals for k in range(terms.size)):
        extracted = offdiagonal_block(rho, vectors, terms[k], terms[k]) / lambdas[k]
        direct = partial_trace(constituents[k], SubsystemSet(s.labels[:2]))
        extraction_error = max(extraction_error, float(np.max(np.abs(extracted - direct.matrix))))

    certificates = tuple(certify(c, ",".join(PAIRS), certifier_settings, g) for c in constituents)

    # every constituent is known up to a phase only, the phases are recovered from the blocks <0|rho|j>
    injected = np.concatenate([[0.0], g.uniform(0, 2 * np.pi, terms.size - 1)])
    shifted = [np.exp(1j * t) * c.amplitudes for t, c in zip(injected, constituents)]
    first = marginals[0]
    keep = [a for a in config[0].indices(labels) if a < 4]
    order = keep + [a for a in range(4) if a not in keep]
    dk = int(np.prod([state.dims[a] for a in keep]))
    matrices = [np.transpose(x.reshape(state.dims[:4]), order).reshape(dk, -1) for x in shifted]

    def _model(i, j):
        return np.sqrt(lambdas[i] * lambdas[j]) * matrices[i] @ matrices[j].conj().T

    recovered = np.zeros(terms.size)
    for j in range(1, terms.size):
        target = offdiagonal_block(first, vectors, terms[0], terms[j])
        recovered[j] = -np.angle(np.vdot(_model(0, j), target))

    block_residual = 0.0
    for i in range(terms.size):
        for j in range(terms.size):
            target = offdiagonal_block(first, vectors, terms[i], terms[j])
            model = np.exp(1j * (recovered[i] - recovered[j])) * _model(i, j)
            block_residual = max(block_residual, float(np.max(np.abs(model - target))))

    amplitudes = sum(
        np.sqrt(lambdas[k]) * np.exp(1j * recovered[k]) * np.kron(shifted[k], vectors[:, terms[k]])
        for k in range(terms.size)
    )
    reconstruction = PureState.create(labels, state.dims, amplitudes)
    f = fidelity(reconstruction, state)
    mismatch = marginal_distance(marginals, marginal_set(reconstruction, config))

    # a relative phase of pi/2 on the last constituent must be visible in the extended marginals
    perturbation = None
    if terms.size > 1:
        shift = np.zeros(terms.size)
        shift[-1] = np.pi / 2
        perturbation = phase_locking_mismatch(state, sd, shift)

    unique = (
        all(c.verdict == Verdict.UNIQUE for c in certificates)
        and f >= 1 - settings.fidelity_tol
        and block_residual <= settings.block_tol
        and (perturbation is None or perturbation > settings.perturbation_tol)
    )
    verdict = Verdict.UNIQUE if unique else Verdict.INCONCLUSIVE
    log.info(
        f"The verdict is {verdict} ({terms.size} terms, fidelity {f:.12f}, block residual {block_residual:.3e})."
    )
    return CorollaryReport(
        verdict,
        certificates=certificates,
        extraction_error=extraction_error,
        injected_phases=injected,
        recovered_phases=recovered,
        block_residual=block_residual,
        fidelity=f,
        mismatch=mismatch,
        perturbation_mismatch=perturbation,
        **common,
    )
