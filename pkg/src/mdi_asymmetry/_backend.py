"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it was built; otherwise
the numpy-vectorized ``_pykernels`` fallback is imported.  Both expose
``jacobi_eigh_batch`` and ``sqrt_psd_batch`` with identical signatures.
"""

import importlib

_MODULES = {"cython": "mdi_asymmetry._ckernels", "python": "mdi_asymmetry._pykernels"}


def load_backend(name):
    """Import a backend by name (``"cython"`` or ``"python"``)."""
    try:
        return importlib.import_module(_MODULES[name])
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; expected one of {sorted(_MODULES)}") from None


def available_backends():
    names = []
    for name in _MODULES:
        try:
            load_backend(name)
        except ImportError:
            continue
        names.append(name)
    return names


try:
    kernels = load_backend("cython")
    BACKEND = "cython"
except ImportError:
    kernels = load_backend("python")
    BACKEND = "python"
