# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

from .random import (
    RandomSource,
    GenericityReport,
    as_generator,
    as_source,
    default_labels,
    haar_unitary,
    haar_state,
    schmidt_coefficients,
    generic_schmidt_state,
    genericity_check,
)
