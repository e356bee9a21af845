# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import click

from udpcert.component import TrialRunner
from udpcert.config import RunConfig
from udpcert.sampling import RandomSource
from udpcert.search import SearchSettings, survey as run_survey
from udpcert.writers import format_float, format_settings

from .click_ext import jobs_option, output_options, settings_for, tol_option, write_output

SURVEY_TABLE = [
    {"name": "SEED", "value": "{seed}"},
    {"name": "STREAM", "value": "{stream}"},
    {"name": "CONFIG", "value": "{config}"},
    {"name": "MISMATCH", "value": "{mismatch}", "format": format_float},
    {"name": "FIDELITY_GAP", "value": "{fidelity_gap}", "format": format_float},
    {"name": "RESTARTS_USED", "value": "{restarts_used}"},
    {"name": "VERDICT", "value": "{verdict}"},
    {"name": "SETTINGS", "value": "{settings}", "format": format_settings},
]


@click.command("survey", help="Search for distinct states with the same marginals.")
@click.option("--config", "pairs", default="AB,AC,AD", show_default=True, help="Marginal configuration.")
@click.option("--states", "states", type=int, default=20, show_default=True, help="Number of random states.")
@click.option("--restarts", "restarts", type=int, required=False, help="Random restarts of the search per state.")
@click.option("--seed", "seed", type=int, required=True, help="Random seed.")
@jobs_option
@tol_option
@output_options("csv")
@click.pass_obj
def survey(config, pairs, states, restarts, seed, jobs, tol, output, format):
    settings = settings_for(config, "search", SearchSettings, tol)
    run = RunConfig(
        "survey",
        seed=seed,
        config=pairs,
        trials=states,
        restarts=restarts if restarts is not None else settings.restarts,
        output=output,
        format=format,
        jobs=jobs,
    )
    table = run_survey(
        run.config,
        run.trials,
        run.restarts,
        RandomSource(run.seed),
        settings,
        TrialRunner(config, jobs=run.jobs),
    )
    if run.format == "csv":
        write_output(config, run, [dict(r.to_dict(), settings=table.settings) for r in table.rows], SURVEY_TABLE)
    else:
        write_output(config, run, table)
