# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of unilcalc._gf2_pure.

Same bit-packed representation and interface.  Small operands (the only kind
the search loops produce) run on C integers; anything larger falls back to
Python-int arithmetic inside the compiled module.
"""

BACKEND = "c"

_ONE = 1  # Python int: shifts below must not run on C operands (overflow)


cdef inline int _bl(unsigned long long x):
    cdef int n = 0
    while x:
        x >>= 1
        n += 1
    return n


def gf2_deg(a):
    return a.bit_length() - 1


def gf2_mul(a, b):
    cdef unsigned long long ca, cb, r
    cdef int j
    cdef int la = a.bit_length()
    cdef int lb = b.bit_length()
    if la == 0 or lb == 0:
        return 0
    if la + lb <= 65:
        ca = a
        cb = b
        r = 0
        j = 0
        while cb:
            if cb & 1:
                r ^= ca << j
            cb >>= 1
            j += 1
        return r
    if a < b:
        a, b = b, a
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
    return out


def gf2_divmod(a, b):
    cdef unsigned long long ca, cb, q
    cdef int da, db, sh
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if a.bit_length() <= 64 and b.bit_length() <= 64:
        ca = a
        cb = b
        db = _bl(cb)
        q = 0
        da = _bl(ca)
        while da >= db:
            sh = da - db
            q |= (<unsigned long long> 1) << sh
            ca ^= cb << sh
            da = _bl(ca)
        return q, ca
    db = b.bit_length()
    qo = 0
    da = a.bit_length()
    while da >= db:
        sh = da - db
        qo |= _ONE << sh
        a ^= b << sh
        da = a.bit_length()
    return qo, a


def gf2_mod(a, b):
    return gf2_divmod(a, b)[1]


def gf2_gcd(a, b):
    cdef unsigned long long ca, cb, t
    cdef int da, db, sh
    if a.bit_length() <= 64 and b.bit_length() <= 64:
        ca = a
        cb = b
        while cb:
            db = _bl(cb)
            da = _bl(ca)
            while da >= db:
                ca ^= cb << (da - db)
                da = _bl(ca)
            t = ca
            ca = cb
            cb = t
        return ca
    while b:
        a, b = b, gf2_divmod(a, b)[1]
    return a


def gf2_spread(a):
    cdef unsigned long long ca, r
    cdef int i
    cdef int la = a.bit_length()
    if la <= 32:
        ca = a
        r = 0
        i = 0
        while ca:
            if ca & 1:
                r |= (<unsigned long long> 1) << (2 * i)
            ca >>= 1
            i += 1
        return r
    out = 0
    i = 0
    while a:
        if a & 1:
            out |= _ONE << (2 * i)
        a >>= 1
        i += 1
    return out


def gf2_cross_square(a):
    cdef unsigned long long ca, cb, r
    cdef int i
    cdef int la = a.bit_length()
    if la <= 32:
        ca = a
        cb = a
        r = 0
        i = 0
        while cb:
            if cb & 1:
                r ^= (ca >> (i + 1)) << (2 * i + 1)
            cb >>= 1
            i += 1
        return r
    out = 0
    i = 0
    b = a
    while b:
        if b & 1:
            out ^= (a >> (i + 1)) << (2 * i + 1)
        b >>= 1
        i += 1
    return out


def z4_add(alo, ahi, blo, bhi):
    carry = alo & blo
    return alo ^ blo, ahi ^ bhi ^ carry


def z4_neg(lo, hi):
    return lo, hi ^ lo


def z4_mul(alo, ahi, blo, bhi):
    cdef unsigned long long clo, chi, rlo, rhi
    cdef unsigned char av[65]
    cdef unsigned char bv[65]
    cdef unsigned char cv[129]
    cdef int i, j, la, lb, n
    if (alo | ahi) == 0 or (blo | bhi) == 0:
        return 0, 0
    la = max(alo.bit_length(), ahi.bit_length())
    lb = max(blo.bit_length(), bhi.bit_length())
    if la + lb <= 65:
        clo = alo
        chi = ahi
        for i in range(la):
            av[i] = ((clo >> i) & 1) | (((chi >> i) & 1) << 1)
        clo = blo
        chi = bhi
        for i in range(lb):
            bv[i] = ((clo >> i) & 1) | (((chi >> i) & 1) << 1)
        n = la + lb - 1
        for i in range(n):
            cv[i] = 0
        for i in range(la):
            if av[i]:
                for j in range(lb):
                    cv[i + j] = (cv[i + j] + av[i] * bv[j]) & 3
        rlo = 0
        rhi = 0
        for i in range(n):
            if cv[i] & 1:
                rlo |= (<unsigned long long> 1) << i
            if cv[i] & 2:
                rhi |= (<unsigned long long> 1) << i
        return rlo, rhi
    # large operands: one bignum multiply does the convolution, 16-bit fields
    A = _pad16(alo) + (_pad16(ahi) << 1)
    B = _pad16(blo) + (_pad16(bhi) << 1)
    P = A * B
    lo = hi = 0
    i = 0
    while P:
        j = P & 0xFFFF
        if j & 1:
            lo |= _ONE << i
        if j & 2:
            hi |= _ONE << i
        P >>= 16
        i += 1
    return lo, hi


cdef _pad16(a):
    out = 0
    cdef int i = 0
    while a:
        if a & 1:
            out |= _ONE << (16 * i)
        a >>= 1
        i += 1
    return out


def z4_sq_lift(f):
    return gf2_spread(f), gf2_cross_square(f)
