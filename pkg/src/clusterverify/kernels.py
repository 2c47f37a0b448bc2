"""Select the compiled Laurent kernels when built, else the pure-Python ones.

Set ``CLUSTERVERIFY_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
impl = _kernels_py

if not os.environ.get("CLUSTERVERIFY_PURE"):
    try:
        from . import _kernels as impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass

add = impl.add
sub = impl.sub
mul = impl.mul
shift = impl.shift
bounds = impl.bounds
divexact = impl.divexact

__all__ = ["BACKEND", "add", "sub", "mul", "shift", "bounds", "divexact"]
