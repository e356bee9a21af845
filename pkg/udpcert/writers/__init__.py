# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

from .writer import Writer, JsonWriter, WriterException
from .csv_writer import CsvWriter, format_float, format_settings
