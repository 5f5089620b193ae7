"""Bit-packed arithmetic kernels for F2[t] and Z4[t], pure Python.

An element of F2[t] is a nonnegative int whose bit k is the coefficient of
t^k.  An element of Z4[t] is a pair of such ints (lo, hi); the coefficient
of t^k is lo_k + 2*hi_k.

This module is the reference implementation; unilcalc._gf2_fast is a
compiled twin with the same interface.  Pick one through unilcalc.kernels.
"""

BACKEND = "python"


def gf2_deg(a):
    """Degree of a, -1 for the zero polynomial."""
    return a.bit_length() - 1


def gf2_mul(a, b):
    if a < b:
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def gf2_divmod(a, b):
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    da = a.bit_length()
    while da >= db:
        sh = da - db
        q |= 1 << sh
        a ^= b << sh
        da = a.bit_length()
    return q, a


def gf2_mod(a, b):
    return gf2_divmod(a, b)[1]


def gf2_gcd(a, b):
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def _spread_byte(x):
    r = 0
    for i in range(8):
        if x >> i & 1:
            r |= 1 << (2 * i)
    return r


_SPREAD8 = [_spread_byte(x) for x in range(256)]


def gf2_spread(a):
    """a(t^2), which equals the mod-2 part of the integer square of a lift."""
    r = 0
    k = 0
    while a:
        r |= _SPREAD8[a & 0xFF] << k
        a >>= 8
        k += 16
    return r


def gf2_cross_square(a):
    """Carry plane of the integer square of the {0,1}-lift of a.

    lift(a)^2 = gf2_spread(a) + 2*gf2_cross_square(a) + 4*(...).
    """
    r = 0
    i = 0
    b = a
    while b:
        if b & 1:
            r ^= (a >> (i + 1)) << (2 * i + 1)
        b >>= 1
        i += 1
    return r


def z4_add(alo, ahi, blo, bhi):
    carry = alo & blo
    return alo ^ blo, ahi ^ bhi ^ carry


def z4_neg(lo, hi):
    return lo, hi ^ lo


def _pad_byte(x):
    r = 0
    for i in range(8):
        if x >> i & 1:
            r |= 1 << (16 * i)
    return r


_PAD16 = [_pad_byte(x) for x in range(256)]


def _pad16(a):
    # one 16-bit field per coefficient, so one bignum multiply performs the
    # whole integer convolution; safe while conv coefficients stay < 2^16,
    # i.e. for any degree this package will ever see
    r = 0
    k = 0
    while a:
        r |= _PAD16[a & 0xFF] << k
        a >>= 8
        k += 128
    return r


def z4_mul(alo, ahi, blo, bhi):
    if (alo | ahi) == 0 or (blo | bhi) == 0:
        return 0, 0
    A = _pad16(alo) + (_pad16(ahi) << 1)
    B = _pad16(blo) + (_pad16(bhi) << 1)
    P = A * B
    lo = hi = 0
    k = 0
    while P:
        c = P & 0xFFFF
        if c & 1:
            lo |= 1 << k
        if c & 2:
            hi |= 1 << k
        P >>= 16
        k += 1
    return lo, hi


def z4_sq_lift(f):
    """Square of the {0,1}-lift of f in F2[t], reduced mod 4."""
    return gf2_spread(f), gf2_cross_square(f)
