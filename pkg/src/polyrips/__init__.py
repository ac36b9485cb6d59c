"""Vietoris-Rips complexes of regular polygons.

Library + CLI computing exact homotopy types and persistence barcodes of
the Rips filtration of a regular polygon with the Euclidean metric, plus a
brute-force simplicial homology oracle that verifies every prediction at
desk scale.
"""

from ._kernels import BACKEND as kernel_backend

__version__ = "0.1.0"
__all__ = ["kernel_backend", "__version__"]
