"""Pure-Python sparse Laurent kernels.

Polynomials are ``dict[int, int]`` maps from a packed exponent key to a
nonzero integer coefficient.  A key stores each exponent in a fixed-width
field offset by ``2**(width-1)``; the first variable occupies the most
significant field, so integer order on keys is lexicographic order on
exponent vectors and adding two keys (minus ``bias``) adds the exponents.

The compiled module ``_kernels`` exposes the same functions.
"""


def add(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def sub(a, b):
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) - c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def mul(a, b, bias):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ka, ca in a.items():
        off = ka - bias
        for kb, cb in b.items():
            k = kb + off
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def shift(a, key, bias):
    off = key - bias
    return {k + off: c for k, c in a.items()}


def bounds(a, n, width):
    """Per-variable (min, max) exponents of a nonempty polynomial."""
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    lo = [None] * n
    hi = [None] * n
    for k in a:
        for i in range(n - 1, -1, -1):
            e = (k & mask) - half
            k >>= width
            if lo[i] is None or e < lo[i]:
                lo[i] = e
            if hi[i] is None or e > hi[i]:
                hi[i] = e
    return lo, hi


def divexact(a, b, n, width, bias):
    """Return ``(q, r)`` with ``r`` empty iff ``q * b == a`` exactly.

    Leading-term elimination in lexicographic order.  Every quotient term
    must lie in the exponent box fixed by the per-variable degrees of ``a``
    and ``b``; a candidate outside it proves non-divisibility, which also
    bounds the loop.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return {}, {}
    alo, ahi = bounds(a, n, width)
    blo, bhi = bounds(b, n, width)
    qlo = [x - y for x, y in zip(alo, blo)]
    qhi = [x - y for x, y in zip(ahi, bhi)]
    for i in range(n):
        if qlo[i] > qhi[i]:
            return {}, dict(a)
    mask = (1 << width) - 1
    half = 1 << (width - 1)
    lb = max(b)
    cb = b[lb]
    r = dict(a)
    q = {}
    while r:
        lr = max(r)
        cr = r[lr]
        if cr % cb:
            return q, r
        t = lr - lb + bias
        k = t
        for i in range(n - 1, -1, -1):
            e = (k & mask) - half
            k >>= width
            if e < qlo[i] or e > qhi[i]:
                return q, r
        c = cr // cb
        q[t] = c
        off = t - bias
        for kb, vb in b.items():
            kk = kb + off
            v = r.get(kk, 0) - c * vb
            if v:
                r[kk] = v
            else:
                del r[kk]
    return q, r
