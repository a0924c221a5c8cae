"""Kernel selection: compiled extension if available, pure Python otherwise.

Set ``TAMEDEG_PURE=1`` in the environment to force the pure-Python kernels
even when the compiled module is importable (used by the benchmark and the
parity tests).
"""

import os

from . import _kernel_py

if os.environ.get("TAMEDEG_PURE"):
    impl = _kernel_py
else:
    try:
        from . import _speedups as impl  # type: ignore[no-redef]
    except ImportError:
        impl = _kernel_py

IMPLEMENTATION = "cython" if impl is not _kernel_py else "python"

SHIFT = _kernel_py.SHIFT
MASK = _kernel_py.MASK
MAX_EXP = _kernel_py.MAX_EXP
pack = _kernel_py.pack
unpack = _kernel_py.unpack

norm = impl.norm
add = impl.add
sub = impl.sub
neg = impl.neg
scale = impl.scale
mul = impl.mul
pow_ = impl.pow_
powers = impl.powers
