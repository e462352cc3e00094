"""Exact-arithmetic toolkit: McKay graphs for S_n/A_n, Weil-character
identities for symplectic/orthogonal groups over small finite fields, and the
inequality calculators backing them.

The commonly used entry points are re-exported here; each submodule carries
the full API.
"""

__version__ = "0.1.0"

CACHE_VERSION = 1

from .anchars import build_an_table  # noqa: E402
from .gfq import FqMatrix, field, support  # noqa: E402
from .mckay import build_mckay, covering_exponent, diameter  # noqa: E402
from .partitions import dimension, enumerate_partitions, staircase  # noqa: E402
from .snchars import build_sn_table, mn_value  # noqa: E402
from .spaces import make_space, point_counts, sample_elements  # noqa: E402
from .weil import beta_value, weil_values  # noqa: E402

__all__ = [
    "CACHE_VERSION",
    "FqMatrix",
    "beta_value",
    "build_an_table",
    "build_mckay",
    "build_sn_table",
    "covering_exponent",
    "diameter",
    "dimension",
    "enumerate_partitions",
    "field",
    "make_space",
    "mn_value",
    "point_counts",
    "sample_elements",
    "staircase",
    "support",
    "weil_values",
]
