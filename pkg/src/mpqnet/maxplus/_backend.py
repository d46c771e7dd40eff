"""Kernel backend selection.

The compiled extension is preferred when importable; the pure-Python module
is the fallback.  Set ``MPQNET_BACKEND=py`` or ``MPQNET_BACKEND=c`` to force
one (forcing ``c`` raises ImportError if the extension is missing rather
than silently degrading).  All matrix code dispatches through the module
attribute ``kernel`` so tests and benchmarks can swap it at runtime.
"""

import os

_forced = os.environ.get("MPQNET_BACKEND", "").strip().lower()

if _forced == "py":
    from . import _kernel_py as kernel

    BACKEND = "py"
elif _forced == "c":
    from . import _kernel_c as kernel  # type: ignore[no-redef]

    BACKEND = "c"
elif _forced:
    raise ValueError(f"MPQNET_BACKEND must be 'py' or 'c', not {_forced!r}")
else:
    try:
        from . import _kernel_c as kernel  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _kernel_py as kernel  # type: ignore[no-redef]

        BACKEND = "py"
