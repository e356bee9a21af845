# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import sys
import signal
import traceback

import click

import udpcert.config as udpcert_config

from udpcert.states import read_state
from udpcert.utils import format_str_color, bcolors, parse_assignments
from udpcert.writers import CsvWriter, JsonWriter

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2


class CoreCommandGroup(click.core.Group):
    """
    The `CoreCommand` is the main entry point for the CLI. It initializes the global variables and
    the logger, and handles the global options such as `--no-ansi` and `--debug`.
    """

    def invoke(self, ctx):
        """
        The main method to run the command.
        """
        # retrieve the global options
        udpcert_config.ANSI_COLORS = not ctx.params.pop("no_ansi", False)
        udpcert_config.DEBUG = ctx.params.pop("debug", False)

        # pylint: disable=broad-except
        try:
            for sig in ("TERM", "INT"):
                signal.signal(
                    getattr(signal, "SIG" + sig),
                    lambda x, y: udpcert_config.exit_event.set(),
                )
            click.core.Group.invoke(self, ctx)
        except click.exceptions.Exit as exception:
            sys.exit(exception.exit_code)
        except click.exceptions.UsageError as exception:
            exception.show()
            sys.exit(EXIT_ERROR)
        except click.core.ClickException as exception:
            raise exception
        except Exception as exception:
            sys.stderr.write(
                format_str_color(
                    f"ERROR: {str(exception)}\n",
                    bcolors.ERROR,
                    not udpcert_config.ANSI_COLORS,
                )
            )
            if udpcert_config.DEBUG:
                sys.stderr.write("---\n")
                traceback.print_exc()
                sys.stderr.write("---\n")

            sys.exit(EXIT_ERROR)


### common options


def tol_option(f):
    return click.option(
        "--tol",
        "tol",
        metavar="<name=value>",
        multiple=True,
        help="Override a setting of the command, can be repeated.",
    )(f)


def output_options(default_format="json"):
    def _decorator(f):
        f = click.option(
            "--format",
            "format",
            type=click.Choice(["json", "csv"]),
            default=default_format,
            show_default=True,
            help="Output format.",
        )(f)
        f = click.option("-o", "--output", "output", metavar="<file>", required=False, help="Output file.")(f)
        return f

    return _decorator


def renormalize_option(f):
    return click.option(
        "--renormalize", "renormalize", is_flag=True, default=False, help="Renormalize the state on reading."
    )(f)


def jobs_option(f):
    return click.option(
        "--jobs", "jobs", type=int, default=1, show_default=True, help="Number of worker threads for the trials."
    )(f)


def settings_for(config, section, clazz, tol):
    """
    Create the settings of the section with the `--tol` overrides.
    """
    return config.settings(section, clazz, parse_assignments(tol))


def read_state_file(config, file, renormalize=False):
    """
    Read the state file with the norm tolerance of the `states` section.
    """
    tol = config.part("states").value_float("read_norm_tol", min=0)
    return read_state(file, renormalize=renormalize, tol=tol)


def write_output(config, run, data, table_def=None):
    """
    Write the data as JSON, or as CSV rows when the format is csv.
    """
    if run.format == "csv":
        if table_def is None:
            raise Exception(f"The command '{run.subcommand}' does not support the csv format.")
        CsvWriter(config, table_def, run.output).write(data)
    else:
        JsonWriter(config, run.output).write(data)
