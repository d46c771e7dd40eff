"""Pure-Python matrix kernels over the max-plus semiring.

All kernels operate on flat row-major lists whose entries are either the
``EPS`` singleton or finite numbers.  ``_kernel_c`` is a compiled drop-in
replacement; the two must stay behaviourally identical, and a test holds
them to that.
"""

from .values import EPS


def mat_add(a, b, size):
    """Entrywise oplus of two flat buffers of the given length."""
    out = [EPS] * size
    for i in range(size):
        x = a[i]
        y = b[i]
        if x is EPS:
            out[i] = y
        elif y is EPS:
            out[i] = x
        else:
            out[i] = x if x >= y else y
    return out


def mat_mul(a, b, ra, ca, cb):
    """Max-plus product of an (ra x ca) and a (ca x cb) flat buffer."""
    out = [EPS] * (ra * cb)
    for i in range(ra):
        arow = i * ca
        orow = i * cb
        for k in range(ca):
            x = a[arow + k]
            if x is EPS:
                continue
            brow = k * cb
            for j in range(cb):
                y = b[brow + j]
                if y is EPS:
                    continue
                s = x + y
                cur = out[orow + j]
                if cur is EPS or s > cur:
                    out[orow + j] = s
    return out


def diag_mul(d, x, rows, cols):
    """Left-multiply a flat (rows x cols) buffer by diag(d): row i gains d[i]."""
    out = [EPS] * (rows * cols)
    for i in range(rows):
        di = d[i]
        if di is EPS:
            continue
        base = i * cols
        for j in range(cols):
            v = x[base + j]
            if v is not EPS:
                out[base + j] = di + v
    return out
