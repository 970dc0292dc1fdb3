"""Exact q-expansions, Shimura lifts, and sign statistics for modular forms.

The heavy lifting lives in the compiled extension ``bkv._core``; this package
re-exports its public surface.
"""

from bkv._core import *  # noqa: F401,F403

__version__ = "0.1.0"
