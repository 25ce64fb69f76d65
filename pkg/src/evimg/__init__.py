"""Eventual images, eventual idempotents and induced automorphisms of
endomorphisms in finite sets, finite-dimensional rational vector spaces,
finite metric spaces and finite posets."""

from .core import *  # noqa: F401,F403
from .fdvect import FDVECT
from .finmet import FINMET, FinMetric, short_map
from .finposet import FINPOSET, FinPoset, monotone
from .finset import FINSET, fin
from .linalg import RatMatrix, RatPoly, SubspaceBasis, rat

CATEGORIES = {c.name: c for c in (FINSET, FDVECT, FINMET, FINPOSET)}

__version__ = "0.1.0"
