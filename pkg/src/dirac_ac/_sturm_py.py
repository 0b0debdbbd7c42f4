"""Pure-Python Sturm-sequence bisection, used when the extension is absent."""


def count_below(d, e2, x, pivmin):
    """Number of eigenvalues strictly below ``x``."""
    q = d[0] - x
    if abs(q) < pivmin:
        q = -pivmin
    c = 1 if q < 0.0 else 0
    for i in range(1, len(d)):
        q = (d[i] - x) - e2[i - 1] / q
        if abs(q) < pivmin:
            q = -pivmin
        if q < 0.0:
            c += 1
    return c


def bisect_lowest(d, e2, count, lower, upper, pivmin, rtol, max_iter):
    d = [float(v) for v in d]
    e2 = [float(v) for v in e2]
    out = []
    floor_lo = lower
    for j in range(count):
        lo, hi = floor_lo, upper
        if count_below(d, e2, hi, pivmin) <= j:
            return out, j
        it = 0
        while hi - lo > rtol * max(abs(lo), abs(hi)) + pivmin:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if count_below(d, e2, mid, pivmin) > j:
                hi = mid
            else:
                lo = mid
            it += 1
            if it >= max_iter:
                break
        out.append(0.5 * (lo + hi))
        floor_lo = lo
    return out, -1
