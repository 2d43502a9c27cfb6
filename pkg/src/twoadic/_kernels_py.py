"""Pure-Python kernels; used when the compiled extension is unavailable."""


def adic_scan(x, n):
    """Exhaustive scan for the minimal rational representation of an n-bit prefix.

    Returns ``(Lambda, f, q)``: q runs over odd positive integers in increasing
    order, f is the absolutely least residue of q*x mod 2**n (positive on the
    half-modulus tie), and the scan stops once q can no longer win.
    """
    mod = 1 << n
    mask = mod - 1
    half = mod >> 1
    best, best_f, best_q = mod + 1, 0, 0
    q = 1
    while q < best:
        r = (q * x) & mask
        f = r - mod if r > half else r
        v = q if q > abs(f) else abs(f)
        if v < best:
            best, best_f, best_q = v, f, q
        q += 2
    return best, best_f, best_q


def bm_profile(bits):
    """Berlekamp-Massey over GF(2); returns [L(1), ..., L(n)]."""
    out = []
    conn = 1  # bit i holds c_i, c_0 = 1
    prev = 1
    length = 0
    last = -1
    window = 0  # bit i holds s_{n-i}
    for n, s in enumerate(bits):
        window = (window << 1) | s
        if (conn & window).bit_count() & 1:
            tmp = conn
            conn ^= prev << (n - last)
            if 2 * length <= n:
                length = n + 1 - length
                prev = tmp
                last = n
        out.append(length)
    return out
