"""Dipole-coupled molecular qubit arrays: dissipative dynamics, entanglement
and Mermin nonlocality.

The compiled core exposes the geometry, Hamiltonian, dynamics, spectral,
quantification and scenario layers of the C++ library.
"""

from ._core import *  # noqa: F401,F403
from ._core import __all__ as _core_all

__all__ = list(_core_all)
__version__ = "0.1.0"
