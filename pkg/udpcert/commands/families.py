# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging

import click

from udpcert.certifier import CertifierSettings, Verdict, certify as certify_state
from udpcert.config import RunConfig
from udpcert.families import family_members, verify_families
from udpcert.sampling import RandomSource
from udpcert.writers import format_float, format_settings

from .click_ext import EXIT_INCONCLUSIVE, output_options, settings_for, tol_option, write_output

FAMILIES_TABLE = [
    {"name": "FAMILY", "value": "{family}"},
    {"name": "PARAMETERS", "value": "{parameters}"},
    {"name": "MEMBERS", "value": "{members}"},
    {"name": "MAX_DEVIATION", "value": "{max_deviation}", "format": format_float},
    {"name": "MIN_FIDELITY", "value": "{min_fidelity}", "format": format_float},
    {"name": "STANDARD_FORM", "value": "{standard_form}"},
    {"name": "DISTINCT", "value": "{distinct}"},
    {"name": "SETTINGS", "value": "{settings}", "format": format_settings},
]


@click.command("families", help="Check the families of states that share their two-body marginals.")
@click.argument("action", metavar="[verify]", type=click.Choice(["verify"]), required=False)
@click.option("--grid", "grid", type=int, required=False, help="Number of points of the phase grid.")
@tol_option
@output_options("csv")
@click.pass_obj
def families(config, action, grid, tol, output, format):
    """
    Without an action the table of the families is written. The `verify` action also certifies the first member
    of every family and fails when the members do not share their marginals.
    """
    part = config.part("families")
    grid = grid if grid is not None else part.value_int("grid", default=20, min=1)
    run = RunConfig("families", trials=grid, output=output, format=format)
    log = logging.getLogger("families")
    marginal_tol = part.value_float("marginal_tol", default=1e-10, min=0)
    distinct_tol = part.value_float("distinct_tol", default=1e-6, min=0)
    family_settings = dict(grid=run.trials, marginal_tol=marginal_tol, distinct_tol=distinct_tol)
    rows = [dict(r.to_dict(), settings=family_settings) for r in verify_families(run.trials, distinct_tol)]
    table_def = FAMILIES_TABLE

    verdicts = []
    if action == "verify":
        failed = [r for r in rows if r["max_deviation"] > marginal_tol]
        if failed:
            raise Exception(
                f"The members of {len(failed)} families do not share their two-body marginals within {marginal_tol:g}."
            )
        settings = settings_for(config, "certifier", CertifierSettings, tol)
        for row, (_, _, states) in zip(rows, family_members(run.trials)):
            cert = certify_state(states[0], "AB,CD,BD", settings, RandomSource(0))
            row["verdict"] = str(cert.verdict)
            row["certifier_settings"] = settings
            verdicts.append(cert.verdict)
        log.info(f"Verified {len(rows)} families.")
        table_def = FAMILIES_TABLE + [
            {"name": "VERDICT", "value": "{verdict}"},
            {"name": "CERTIFIER_SETTINGS", "value": "{certifier_settings}", "format": format_settings},
        ]

    write_output(config, run, rows, table_def)
    if Verdict.INCONCLUSIVE in verdicts:
        raise click.exceptions.Exit(EXIT_INCONCLUSIVE)
