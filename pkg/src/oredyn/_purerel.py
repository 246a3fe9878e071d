"""Packed-bitset relation kernel, pure Python reference implementation.

A relation R between {0..n-1} and {0..m-1} is a tuple `rows` of n ints;
bit j of rows[i] is set iff (i, j) in R.  All kernel functions are
total on that encoding and hold for arbitrary widths (Python ints).
The compiled twin in _fastrel covers widths <= 64 only.
"""


def identity(n):
    return tuple(1 << i for i in range(n))


def compose(g_rows, f_rows):
    """Rows of g after f: bit k of out[i] iff exists j with f(i,j), g(j,k)."""
    out = []
    for mask in f_rows:
        acc = 0
        m = mask
        while m:
            low = m & -m
            acc |= g_rows[low.bit_length() - 1]
            m ^= low
        out.append(acc)
    return tuple(out)


def inverse(rows, n_targets):
    out = [0] * n_targets
    for i, mask in enumerate(rows):
        m = mask
        while m:
            low = m & -m
            out[low.bit_length() - 1] |= 1 << i
            m ^= low
    return tuple(out)


def iterate(rows, n):
    """n-fold self-composition; n = 0 gives the identity."""
    if n < 0:
        raise ValueError("iteration count must be >= 0")
    acc = identity(len(rows))
    for _ in range(n):
        acc = compose(rows, acc)
    return acc


def image_mask(rows):
    acc = 0
    for mask in rows:
        acc |= mask
    return acc


def preimage_mask(rows, target_mask):
    acc = 0
    for i, mask in enumerate(rows):
        if mask & target_mask:
            acc |= 1 << i
    return acc


def diagonal_mask(rows):
    acc = 0
    for i, mask in enumerate(rows):
        if mask & (1 << i):
            acc |= 1 << i
    return acc


def periodic_mask(rows, n):
    """Points i with i in R^n(i), for exact period divisor n >= 1."""
    if n < 1:
        raise ValueError("period must be >= 1")
    return diagonal_mask(iterate(rows, n))


def cyclic_mask(rows, nmax):
    """Points periodic for some n in 1..nmax."""
    acc = 0
    power = identity(len(rows))
    for _ in range(nmax):
        power = compose(rows, power)
        acc |= diagonal_mask(power)
    return acc
