"""Entity-type-routed relation classification with a dual-mode evaluation harness.

The compiled extension carries the whole API; this package just re-exports it.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__, __version__  # noqa: F401
