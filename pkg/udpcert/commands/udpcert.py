# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import sys

import click

import udpcert.config as udpcert_config

from udpcert import __version__
from udpcert.config import Config

from .click_ext import CoreCommandGroup, EXIT_ERROR, EXIT_OK
from .sample import sample
from .marginals import marginals
from .certify import certify
from .families import families
from .survey import survey
from .corollary import corollary
from .config import config


@click.group(cls=CoreCommandGroup)
@click.option("--no-ansi", "no_ansi", is_flag=True, default=False, help="No ANSI colors.")
@click.option("-d", "--debug", "debug", is_flag=True, default=False, help="Print debug information.")
@click.option("-c", "--config", "config_file", metavar="<file>", required=False, help="Configuration file.")
@click.option("-e", "--env", "env", metavar="<file>", required=False, help="Environment variable file.")
@click.version_option(version=__version__)
@click.pass_context
def udpcert(ctx, config_file, env):
    ctx.obj = Config(config_file, env, "DEBUG" if udpcert_config.DEBUG else "INFO")


udpcert.add_command(sample)
udpcert.add_command(marginals)
udpcert.add_command(certify)
udpcert.add_command(families)
udpcert.add_command(survey)
udpcert.add_command(corollary)
udpcert.add_command(config)


def run(argv):
    """
    Run the CLI with the arguments and return the exit code.
    """
    try:
        code = udpcert.main(args=list(argv), prog_name="udpcert", standalone_mode=False)
    except SystemExit as e:
        return EXIT_OK if e.code is None else e.code if isinstance(e.code, int) else EXIT_ERROR
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.exceptions.UsageError as e:
        e.show()
        return EXIT_ERROR
    except click.exceptions.ClickException as e:
        e.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        return EXIT_ERROR
    return code if isinstance(code, int) else EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))
