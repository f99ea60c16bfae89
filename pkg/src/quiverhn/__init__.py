# -*- coding: utf-8 -*-
"""
quiverhn, stability of acyclic quiver representations over the rationals

Discrepancies with witnessing subrepresentations, Harder-Narasimhan
filtrations and maximally destabilizing one-parameter subgroups, computed in
exact rational arithmetic.  Every randomized step ends in an exact check.


REFERENCES

    https://en.wikipedia.org/wiki/Quiver_(mathematics)
    https://en.wikipedia.org/wiki/Harder%E2%80%93Narasimhan_stratification
    https://en.wikipedia.org/wiki/Geometric_invariant_theory
"""

__author__ = """quiverhn developers"""
__version__ = "0.1.0"

import logging

from . import gen, hn, disc, kempf, utils, errors, quiver, shrunk, exactla, oracles
from .quiver import Path, Arrow, Quiver, SubRep, Weight, Representation, load_instance, dump_instance

logger = logging.getLogger(__name__)
