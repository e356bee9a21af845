# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging

import click

from udpcert.certifier import CertifierSettings, Verdict, certify as certify_state
from udpcert.component import TrialRunner
from udpcert.config import RunConfig
from udpcert.sampling import RandomSource, haar_state
from udpcert.writers import format_float, format_settings

from .click_ext import (
    EXIT_INCONCLUSIVE,
    jobs_option,
    output_options,
    read_state_file,
    renormalize_option,
    settings_for,
    tol_option,
    write_output,
)

LABELS = ("A", "B", "C", "D")

CERTIFICATE_TABLE = [
    {"name": "SEED", "value": "{seed}"},
    {"name": "STREAM", "value": "{stream}"},
    {"name": "CONFIG", "value": "{config}"},
    {"name": "VERDICT", "value": "{verdict}"},
    {"name": "SPAN_DIM", "value": "{span_dim}"},
    {"name": "NULLSPACE_DIM", "value": "{nullspace_dim}"},
    {"name": "MAX_NONTRIVIAL_NORM", "value": "{compatibility.max_nontrivial_norm}", "format": format_float},
    {"name": "ORACLE_RESIDUAL", "value": "{oracle.residual}", "format": format_float},
    {"name": "SETTINGS", "value": "{settings}", "format": format_settings},
]


def certificate_row(seed, stream, cert):
    d = cert.to_dict()
    return {
        "seed": seed,
        "stream": stream,
        "config": d["config"],
        "verdict": d["verdict"],
        "span_dim": d["span_dim"],
        "nullspace_dim": d["nullspace_dim"],
        "compatibility": cert.compatibility.to_dict() if cert.compatibility is not None else None,
        "oracle": cert.oracle.to_dict() if cert.oracle is not None else None,
        "settings": cert.settings,
    }


@click.command("certify", help="Certify that states are determined by their marginals.")
@click.argument("state_file", metavar="<file>", required=False)
@click.option("--seed", "seed", type=int, required=False, help="Random seed of the sampled states and the solvers.")
@click.option("--d", "d", type=int, default=2, show_default=True, help="Local dimension of the sampled states.")
@click.option("--trials", "trials", type=int, default=1, show_default=True, help="Number of sampled states.")
@click.option("--config", "pairs", default="AB,CD,BD", show_default=True, help="Marginal configuration.")
@renormalize_option
@jobs_option
@tol_option
@output_options()
@click.pass_obj
def certify(config, state_file, seed, d, trials, pairs, renormalize, jobs, tol, output, format):
    run = RunConfig("certify", seed=seed, d=d, config=pairs, trials=trials, output=output, format=format, jobs=jobs)
    settings = settings_for(config, "certifier", CertifierSettings, tol)
    log = logging.getLogger("certifier")

    if state_file is not None:
        state = read_state_file(config, state_file, renormalize)
        rng = RandomSource(run.seed if run.seed is not None else 0)
        results = [(run.seed, 0, certify_state(state, run.config, settings, rng.generator))]
    else:
        if run.seed is None:
            raise Exception("Either a state file or the seed is required.")

        def _trial(stream):
            rng = RandomSource(run.seed, stream).generator
            state = haar_state((run.d,) * 4, rng, LABELS)
            return (run.seed, stream, certify_state(state, run.config, settings, rng))

        results = TrialRunner(config, jobs=run.jobs).run(_trial, range(run.trials))

    verdicts = [c.verdict for _, _, c in results]
    log.info(f"Certified {len(results)} states, {verdicts.count(Verdict.UNIQUE)} are unique.")
    if run.format == "csv":
        write_output(config, run, [certificate_row(*x) for x in results], CERTIFICATE_TABLE)
    elif len(results) == 1:
        write_output(config, run, results[0][2])
    else:
        write_output(config, run, [dict(seed=s, stream=k, **c.to_dict()) for s, k, c in results])

    if Verdict.INCONCLUSIVE in verdicts:
        raise click.exceptions.Exit(EXIT_INCONCLUSIVE)
