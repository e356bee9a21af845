# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import logging

import click

from udpcert.config import RunConfig
from udpcert.sampling import RandomSource, default_labels, generic_schmidt_state, genericity_check, haar_state
from udpcert.states import ArgumentException
from udpcert.utils import parse_list

from .click_ext import output_options, write_output


@click.command("sample", help="Draw Haar-random pure states.")
@click.option("--seed", "seed", type=int, required=True, help="Random seed.")
@click.option("--dims", "dims", default="2,2,2,2", show_default=True, help="Local dimensions.")
@click.option("--trials", "trials", type=int, default=1, show_default=True, help="Number of states, one stream each.")
@click.option(
    "--generic", "generic", is_flag=True, default=False, help="Build the state in the Schmidt form along AB|CD."
)
@output_options()
@click.pass_obj
def sample(config, seed, dims, trials, generic, output, format):
    dims = parse_list(dims, int)
    run = RunConfig("sample", seed=seed, n=len(dims), trials=trials, output=output, format=format)
    log = logging.getLogger("sampling")
    if generic and (len(dims) != 4 or len(set(dims)) != 1):
        raise ArgumentException("The generic states require four parties with equal dimensions.")

    part = config.part("sampling")
    gap_tol, rank_tol = part.value_float("gap_tol", min=0), part.value_float("rank_tol", min=0)

    states = []
    for stream in range(run.trials):
        rng = RandomSource(run.seed, stream)
        if generic:
            state, sd = generic_schmidt_state(dims[0], rng)
            report = genericity_check(sd, gap_tol, rank_tol)
            if not report.is_generic:
                log.warning(
                    f"The state of stream {stream} is not generic (gap {report.min_pairwise_gap:.3e}, "
                    f"smallest coefficient {report.min_coefficient:.3e})."
                )
        else:
            state = haar_state(dims, rng, default_labels(len(dims)))
        states.append(state)
    log.info(f"Sampled {len(states)} states with dimensions {dims}, seed {run.seed}.")
    write_output(config, run, states[0] if run.trials == 1 else states)
