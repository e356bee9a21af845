# -*- coding: utf-8 -*-
# @author: Tomas Vitvar, https://vitvar.com, tomas@vitvar.com

from .family import (
    LABELS,
    DIMS,
    ZERO4,
    ONE4,
    W4,
    D24,
    D34,
    FamilyParameters,
    FamilyRow,
    dicke,
    family_a,
    family_b,
    family_c,
    family_c_condition,
    family_c_partner,
    dicke_lu_image,
    is_standard_form,
    phase_grid,
    compare_members,
    family_members,
    verify_families,
)
