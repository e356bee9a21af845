# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging

from dataclasses import dataclass

from udpcert.component import TrialRunner
from udpcert.sampling import as_source, haar_state
from udpcert.states import SubsystemSet, marginal_set

from .search import SearchSettings, compatibility_search

NO_DISTINCT_FOUND = "NO_DISTINCT_FOUND"
DISTINCT_FOUND = "DISTINCT_FOUND"

LABELS = ("A", "B", "C", "D")
DIMS = (2, 2, 2, 2)

log = logging.getLogger("survey")


@dataclass(frozen=True)
class SurveyRow:
    seed: int
    stream: int
    config: str
    mismatch: float
    fidelity_gap: float
    restarts_used: int
    verdict: str

    def to_dict(self):
        return {
            "seed": self.seed,
            "stream": self.stream,
            "config": self.config,
            "mismatch": self.mismatch,
            "fidelity_gap": self.fidelity_gap,
            "restarts_used": self.restarts_used,
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class SurveyTable:
    config: str
    rows: tuple
    settings: SearchSettings

    @property
    def distinct(self):
        return sum(1 for r in self.rows if r.verdict == DISTINCT_FOUND)

    def to_dict(self):
        return {
            "config": self.config,
            "rows": [r.to_dict() for r in self.rows],
            "distinct": self.distinct,
            "settings": self.settings,
        }


def survey_config(config):
    if isinstance(config, str):
        config = [x.strip() for x in config.split(",") if x.strip() != ""]
    return [SubsystemSet.parse(x, LABELS) for x in config]


def survey(config, num_states, restarts, rng, settings=None, runner=None):
    """
    Draw `num_states` Haar-random four-qubit states, one stream of `rng` per state, and search for a distinct pure
    state with the marginals of the configuration. The rows are ordered by stream.
    """
    settings = settings or SearchSettings()
    rng = as_source(rng)
    config = survey_config(config)
    name = ",".join(str(x) for x in config)

    def _trial(stream):
        g = rng.spawn(stream).generator
        state = haar_state(DIMS, g, LABELS)
        target = marginal_set(state, config)
        result = compatibility_search(target, state, restarts, g, settings, stop_on_distinct=True)
        verdict = DISTINCT_FOUND if result.is_distinct(settings) else NO_DISTINCT_FOUND
        log.info(
            f"State {stream}: {verdict}, mismatch {result.mismatch:.3e}, "
            f"fidelity {result.fidelity_to_reference:.6f}."
        )
        return SurveyRow(
            rng.seed, stream, name, result.mismatch, 1 - result.fidelity_to_reference, result.restarts_used, verdict
        )

    runner = runner or TrialRunner(None, "runner")
    rows = runner.run(_trial, range(num_states))
    return SurveyTable(name, tuple(rows), settings)
