"""Finite-dimensional quantum channels: Choi representations, Stinespring
dilations, link products, channel fidelity and discrimination sweeps."""

try:
    from ._chanlink import *  # noqa: F401,F403
    from ._chanlink import __doc__ as _native_doc  # noqa: F401
except ImportError:  # running against a build tree, module not in the package
    from _chanlink import *  # noqa: F401,F403

__version__ = "0.1.0"
