"""Elliptic n-particle model toolkit: special functions, Z_n R/r-matrices,
Lax fields and identity residuals, backed by the C++ core."""

try:
    from ._laxlab import *  # noqa: F401,F403  (installed layout)
except ImportError:  # pragma: no cover - in-build layout
    from _laxlab import *  # noqa: F401,F403

__version__ = "0.1.0"
