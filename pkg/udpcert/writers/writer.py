# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

import os
import sys

from udpcert.component import BaseComponent
from udpcert.utils import dumps


class WriterException(Exception):
    pass


class Writer(BaseComponent):
    """
    Base class of the result writers. A writer targets a file or, when no file is given,
    the standard output.
    """

    def __init__(self, config, output=None, component_id="writer"):
        super().__init__(config, component_id)
        self.output = output

    def do_write(self, stream, data):
        """
        Abstract method to write data to the stream.
        """
        pass

    def write(self, data):
        if self.output is None:
            self.do_write(sys.stdout, data)
            sys.stdout.flush()
            return
        path = self.output
        d = os.path.dirname(path)
        try:
            if d != "":
                os.makedirs(d, exist_ok=True)
            with open(path, "w") as f:
                self.do_write(f, data)
        except OSError as e:
            raise WriterException(f"Cannot write the output to {path}. {str(e)}")
        self.log.info(f"The output was written to {path}.")


class JsonWriter(Writer):
    def do_write(self, stream, data):
        stream.write(dumps(data) + "\n")
