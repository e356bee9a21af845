# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import click

from udpcert.certifier import CertifierSettings, Verdict
from udpcert.component import TrialRunner
from udpcert.config import RunConfig
from udpcert.sampling import RandomSource
from udpcert.search import CorollarySettings, corollary_check
from udpcert.writers import format_float, format_settings

from .click_ext import EXIT_INCONCLUSIVE, jobs_option, output_options, settings_for, tol_option, write_output

COROLLARY_TABLE = [
    {"name": "SEED", "value": "{seed}"},
    {"name": "STREAM", "value": "{stream}"},
    {"name": "N", "value": "{n}"},
    {"name": "VERDICT", "value": "{verdict}"},
    {"name": "TERMS", "value": "{terms}"},
    {"name": "FIDELITY", "value": "{fidelity}", "format": format_float},
    {"name": "BLOCK_RESIDUAL", "value": "{block_residual}", "format": format_float},
    {"name": "PERTURBATION_MISMATCH", "value": "{perturbation_mismatch}", "format": format_float},
    {"name": "EXTRACTION_ERROR", "value": "{extraction_error}", "format": format_float},
    {"name": "SETTINGS", "value": "{settings}", "format": format_settings},
    {"name": "CERTIFIER_SETTINGS", "value": "{certifier_settings}", "format": format_settings},
]


@click.command("corollary", help="Check that n-qubit states are determined by the extended marginals.")
@click.option("--n", "n", type=int, default=5, show_default=True, help="Number of qubits, 5 or 6.")
@click.option("--seed", "seed", type=int, required=True, help="Random seed.")
@click.option("--trials", "trials", type=int, default=1, show_default=True, help="Number of random states.")
@jobs_option
@tol_option
@click.option(
    "--certifier-tol",
    "certifier_tol",
    metavar="<name=value>",
    multiple=True,
    help="Override a setting of the certifier of the constituents, can be repeated.",
)
@output_options()
@click.pass_obj
def corollary(config, n, seed, trials, jobs, tol, certifier_tol, output, format):
    run = RunConfig("corollary", seed=seed, n=n, trials=trials, output=output, format=format, jobs=jobs)
    settings = settings_for(config, "corollary", CorollarySettings, tol)
    certifier_settings = settings_for(config, "certifier", CertifierSettings, certifier_tol)

    def _trial(stream):
        report = corollary_check(run.n, RandomSource(run.seed, stream), None, settings, certifier_settings)
        return dict(seed=run.seed, stream=stream, terms=len(report.coefficients), **report.to_dict())

    reports = TrialRunner(config, jobs=run.jobs).run(_trial, range(run.trials))
    if run.format == "csv":
        write_output(config, run, reports, COROLLARY_TABLE)
    else:
        write_output(config, run, reports[0] if run.trials == 1 else reports)
    if any(r["verdict"] == str(Verdict.INCONCLUSIVE) for r in reports):
        raise click.exceptions.Exit(EXIT_INCONCLUSIVE)
