# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import re
import sys

PLACEHOLDER = re.compile(r"\{[a-zA-Z0-9_\-\.]+\}")


class Table:
    """
    Renders a list of dictionaries as CSV. The table definition is a list of columns, each with a `name`,
    a `value` template with `{field}` placeholders (dotted paths are allowed) and an optional `format`
    function called as `format(cdef, value, entry)`.
    """

    def __init__(self, table_def):
        self.table_def = table_def

    def format_item(self, cdef, value, entry=None):
        if cdef.get("format"):
            try:
                return str(cdef["format"](cdef, value, entry))
            except Exception:
                return "E!"
        return str(value) if value is not None else ""

    def get_field(self, field_name, data):
        d = data
        for f in field_name.split("."):
            try:
                d = d.get(f)
            except AttributeError:
                return None
        return d

    def eval_value(self, value, data):
        if not value:
            return None
        params = list(set(PLACEHOLDER.findall(value)))
        if len(params) > 1 or (len(params) == 1 and params[0] != value):
            val = value
            for k in params:
                val = val.replace(k, str(self.get_field(k[1:-1], data)))
            return val
        if len(params) == 1:
            return self.get_field(params[0][1:-1], data)
        return value

    def _quote(self, v, delim):
        if delim in v or '"' in v:
            return '"' + v.replace('"', '""') + '"'
        return v

    def lines(self, data, delim=","):
        yield delim.join(self._quote(cdef["name"], delim) for cdef in self.table_def)
        for e in data:
            yield delim.join(
                self._quote(self.format_item(cdef, self.eval_value(cdef.get("value"), e), e), delim)
                for cdef in self.table_def
            )

    def display(self, data, stream=None, delim=","):
        """
        Write the header and one line per entry to the stream (standard output by default),
        return the number of lines written.
        """
        stream = stream or sys.stdout
        n = 0
        for line in self.lines(data, delim):
            stream.write(f"{line}\n")
            n += 1
        return n
