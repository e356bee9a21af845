# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

from .search import (
    MarginalObjective,
    PartyWitness,
    SearchResult,
    SearchSettings,
    compatibility_search,
    rotated_party_witness,
)
from .survey import DISTINCT_FOUND, NO_DISTINCT_FOUND, SurveyRow, SurveyTable, survey, survey_config
from .corollary import (
    CorollaryReport,
    CorollarySettings,
    corollary_check,
    extended_config,
    offdiagonal_block,
    phase_locking_mismatch,
)
