"""Exact arithmetic for M(1), M(1)^+, V_L and V_L^+ at c = 1.

The modules are layered: ``fock`` (bases, form), ``vertex`` (modes),
``virasoro``, then the identity checks in ``identities``, ``zhu``,
``characters``, ``fusion`` and ``properties``; ``checks`` and ``cli``
drive them as a batch.
"""

from .fock import CutoffExceeded, Monomial, SpaceConfig, Vector
from .report import CheckReport

__all__ = ["CheckReport", "CutoffExceeded", "Monomial", "SpaceConfig", "Vector"]
__version__ = "0.1.0"
