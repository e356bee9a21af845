# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import numpy as np

from udpcert.json2table import Table

from .writer import Writer


def format_float(cdef, value, entry):
    if value is None:
        return ""
    if isinstance(value, float) and np.isinf(value):
        return "inf"
    return f"{value:.{cdef.get('digits', 12)}g}"


def format_settings(cdef, value, entry):
    """
    Format a settings object or dictionary as `name=value` pairs separated by semicolons.
    """
    if value is None:
        return ""
    if callable(getattr(value, "to_dict", None)):
        value = value.to_dict()
    return ";".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}" for k, v in value.items())


class CsvWriter(Writer):
    """
    Writes rows (dictionaries) as comma-delimited CSV with a header row. The columns
    are json2table definitions.
    """

    def __init__(self, config, table_def, output=None, component_id="writer"):
        super().__init__(config, output, component_id)
        self.table = Table(table_def)

    def do_write(self, stream, data):
        rows = [x.to_dict() if callable(getattr(x, "to_dict", None)) else x for x in data]
        n = self.table.display(rows, stream=stream)
        self.log.debug(f"Written {n - 1} rows.")
