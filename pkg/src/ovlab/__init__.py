"""Pointwise curvature algebra for affine hypersurfaces.

The building blocks live in :mod:`ovlab.tensors` and :mod:`ovlab.ops`; the
verification batteries in :mod:`ovlab.affine_verify`, :mod:`ovlab.identities`
and :mod:`ovlab.spaceform`; coordinate metrics in :mod:`ovlab.metric`.
"""

from .affine import AffineInstance, Spectrum, classify, from_spectrum
from .ops import (
    G_tensor, curv_action, kulkarni_nomizu, ricci, roter_decompose, scalar, tachibana, weyl,
)
from .report import Report
from .tensors import Curv4, Frame, Sym2, Tensor

__version__ = "0.1.0"

__all__ = [
    "AffineInstance", "Curv4", "Frame", "G_tensor", "Report", "Spectrum", "Sym2", "Tensor",
    "classify", "curv_action", "from_spectrum", "kulkarni_nomizu", "ricci", "roter_decompose",
    "scalar", "tachibana", "weyl",
]
