"""Hot kernels, compiled when available.

``BACKEND`` is ``"cython"`` when the extension imported and ``"python"``
otherwise.  Setting ``PRYMLAB_PURE=1`` forces the fallback.
"""
import os

from . import _theta_py

python_theta_sum = _theta_py.theta_sum

compiled_theta_sum = None
if os.environ.get("PRYMLAB_PURE") != "1":
    try:
        from ._theta_ext import theta_sum as compiled_theta_sum
    except ImportError:
        compiled_theta_sum = None

if compiled_theta_sum is not None:
    theta_sum = compiled_theta_sum
    BACKEND = "cython"
else:
    theta_sum = python_theta_sum
    BACKEND = "python"

__all__ = ["BACKEND", "theta_sum", "python_theta_sum", "compiled_theta_sum"]
