# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import re
import json

import numpy as np

from functools import reduce


class bcolors:
    HEADER = "\033[95m"
    OKBLUE = "\033[94m"
    OKGREEN = "\033[32m"
    WARNING = "\033[33m"
    ERROR = "\033[91m"
    ENDC = "\033[0m"
    BOLD = "\033[1m"
    UNDERLINE = "\033[4m"
    LIGHTGRAY = "\033[90m"
    MAGENTA = "\033[35m"


def format_str_color(str, color, disable=False):
    color = None if disable else color
    return (color if color is not None else "") + str + (bcolors.ENDC if color is not None else "")


class ArrayEncoder(json.JSONEncoder):
    """
    JSON encoder for numpy scalars and arrays. Complex arrays are written as a dictionary
    with separate `re` and `im` lists so that the output stays plain JSON.
    """

    def default(self, o):
        if isinstance(o, np.ndarray):
            if np.iscomplexobj(o):
                return {"re": o.real.tolist(), "im": o.imag.tolist()}
            return o.tolist()
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, complex) or isinstance(o, np.complexfloating):
            return {"re": float(o.real), "im": float(o.imag)}
        if callable(getattr(o, "to_dict", None)):
            return o.to_dict()
        return super().default(o)


def dumps(data):
    """
    Serialize data to the canonical JSON form used for all outputs.
    """
    return json.dumps(data, indent=4, sort_keys=True, cls=ArrayEncoder)


def deep_find(dic, keys, default=None, type=None, delim="."):
    val = reduce(
        lambda di, key: di.get(key, default) if isinstance(di, dict) else default,
        keys.split(delim),
        dic,
    )
    if val == default:
        return default
    return type(val) if type != None else val


def deep_merge(source, destination):
    for key, value in source.items():
        if isinstance(value, dict):
            node = destination.setdefault(key, {})
            deep_merge(value, node)
        else:
            if key in destination and isinstance(destination[key], list) and isinstance(value, list):
                for x in value:
                    destination[key].append(x)
            else:
                if key not in destination:
                    destination[key] = value
    return destination


def override(source, destination):
    """
    Recursively copy values from `source` to `destination` replacing existing values.
    """
    for key, value in source.items():
        if isinstance(value, dict) and isinstance(destination.get(key), dict):
            override(value, destination[key])
        else:
            destination[key] = value
    return destination


def parse_list(value, type=str, sep=","):
    """
    Parse a separated list such as `2,2,2,2` or `AB,CD,BD`.
    """
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return [type(x) for x in value]
    return [type(x.strip()) for x in value.split(sep) if x.strip() != ""]


def parse_assignments(values):
    """
    Parse `NAME=VALUE` assignments into a dictionary. Values are converted to int, float or bool when possible.
    """

    def _convert(v):
        if re.match(r"^(true|false)$", v, re.IGNORECASE):
            return v.lower() == "true"
        for t in (int, float):
            try:
                return t(v)
            except ValueError:
                pass
        return v

    result = {}
    for item in values or []:
        if "=" not in item:
            raise Exception(f"Invalid assignment '{item}', the format must be NAME=VALUE.")
        k, v = item.split("=", 1)
        result[k.strip()] = _convert(v.strip())
    return result
