"""Relation kernel dispatcher.

Selects the compiled bitset kernel when the extension built and the
operands fit in 64 bits, otherwise the pure Python implementation.
Both expose the same functions over the packed-rows encoding described
in _purerel.
"""

from . import _purerel

try:
    from . import _fastrel

    HAVE_FAST = True
except ImportError:
    _fastrel = None
    HAVE_FAST = False

BACKEND = "cython" if HAVE_FAST else "python"

_WIDTH = 64
_FULL = (1 << _WIDTH) - 1


def _fits(rows):
    return len(rows) <= _WIDTH and all(0 <= r <= _FULL for r in rows)


def identity(n):
    if HAVE_FAST and n <= _WIDTH:
        return _fastrel.identity(n)
    return _purerel.identity(n)


def compose(g_rows, f_rows):
    if HAVE_FAST and _fits(g_rows) and _fits(f_rows):
        return _fastrel.compose(g_rows, f_rows)
    return _purerel.compose(g_rows, f_rows)


def inverse(rows, n_targets):
    if HAVE_FAST and n_targets <= _WIDTH and _fits(rows):
        return _fastrel.inverse(rows, n_targets)
    return _purerel.inverse(rows, n_targets)


def iterate(rows, n):
    if HAVE_FAST and _fits(rows):
        return _fastrel.iterate(rows, n)
    return _purerel.iterate(rows, n)


def image_mask(rows):
    if HAVE_FAST and _fits(rows):
        return _fastrel.image_mask(rows)
    return _purerel.image_mask(rows)


def preimage_mask(rows, target_mask):
    if HAVE_FAST and _fits(rows) and 0 <= target_mask <= _FULL:
        return _fastrel.preimage_mask(rows, target_mask)
    return _purerel.preimage_mask(rows, target_mask)


def diagonal_mask(rows):
    if HAVE_FAST and _fits(rows):
        return _fastrel.diagonal_mask(rows)
    return _purerel.diagonal_mask(rows)


def periodic_mask(rows, n):
    if HAVE_FAST and _fits(rows):
        return _fastrel.periodic_mask(rows, n)
    return _purerel.periodic_mask(rows, n)


def cyclic_mask(rows, nmax):
    if HAVE_FAST and _fits(rows):
        return _fastrel.cyclic_mask(rows, nmax)
    return _purerel.cyclic_mask(rows, nmax)
