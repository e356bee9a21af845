# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import click

from udpcert.config import RunConfig
from udpcert.states import marginal_set

from .click_ext import output_options, read_state_file, renormalize_option, write_output


@click.command("marginals", help="Compute the marginals of a state.")
@click.argument("state_file", metavar="<file>")
@click.option("--config", "pairs", required=True, help="Subsystem sets, e.g. AB,CD,BD.")
@renormalize_option
@output_options()
@click.pass_obj
def marginals(config, state_file, pairs, renormalize, output, format):
    run = RunConfig("marginals", config=pairs, output=output, format=format)
    state = read_state_file(config, state_file, renormalize)
    write_output(config, run, marginal_set(state, run.pairs(state.labels)))
