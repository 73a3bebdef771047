# -*- coding: utf-8 -*-
"""Symmetric coverings, lifts and distributed protocols on anonymous networks."""

from ._settings import settings
import anoncover.consts
import anoncover.graphs
import anoncover.coverings
import anoncover.lifts
import anoncover.feasibility
import anoncover.protocols
import anoncover.simulator

__version__ = "0.1.0"
