# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import click

from udpcert.utils import dumps


@click.command("config", help="Print the effective configuration.")
@click.pass_obj
def config(config):
    click.echo(dumps(config.raw_config))
