# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Mirrors the API of ``_kernels_py``: squarefree_mask, poly_roots_mod_p,
value_square_profile.  Restricted to primes p < 2^31 and values < 2^62,
which covers every desk-scale census; callers fall back to the pure
backend outside that range.
"""

import math

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF MAXD = 24
DEF MAXD2 = 48


cdef long long c_powmod(long long b, long long e, long long p) nogil:
    cdef long long r = 1
    b %= p
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


cdef int c_trim(long long* a, int deg) nogil:
    while deg >= 0 and a[deg] == 0:
        deg -= 1
    return deg


cdef int c_pmul(long long* a, int da, long long* b, int db, long long* out,
                long long p) nogil:
    cdef int i, j
    if da < 0 or db < 0:
        return -1
    for i in range(da + db + 1):
        out[i] = 0
    for i in range(da + 1):
        if a[i]:
            for j in range(db + 1):
                out[i + j] = (out[i + j] + a[i] * b[j]) % p
    return c_trim(out, da + db)


cdef int c_prem(long long* a, int da, long long* b, int db, long long p) nogil:
    cdef long long inv = c_powmod(b[db], p - 2, p)
    cdef long long q
    cdef int i, shift
    while da >= db:
        q = a[da] * inv % p
        shift = da - db
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - q * b[i]) % p
            if a[shift + i] < 0:
                a[shift + i] += p
        da = c_trim(a, da)
    return da


cdef int c_pquo(long long* a, int da, long long* b, int db, long long* out,
                long long p) nogil:
    # quotient of a by b; a is destroyed
    cdef long long inv = c_powmod(b[db], p - 2, p)
    cdef long long q
    cdef int i, shift, dq = da - db
    for i in range(dq + 1):
        out[i] = 0
    while da >= db:
        q = a[da] * inv % p
        shift = da - db
        out[shift] = q
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - q * b[i]) % p
            if a[shift + i] < 0:
                a[shift + i] += p
        da = c_trim(a, da)
    return c_trim(out, dq)


cdef int c_pgcd(long long* a, int da, long long* b, int db, long long p,
                long long* out) nogil:
    cdef long long buf1[MAXD2]
    cdef long long buf2[MAXD2]
    cdef long long* x = buf1
    cdef long long* y = buf2
    cdef long long* t
    cdef long long inv
    cdef int dx = da, dy = db, i, dtmp
    for i in range(da + 1):
        buf1[i] = a[i]
    for i in range(db + 1):
        buf2[i] = b[i]
    while dy >= 0:
        dx = c_prem(x, dx, y, dy, p)
        t = x; x = y; y = t
        dtmp = dx; dx = dy; dy = dtmp
    if dx >= 0:
        inv = c_powmod(x[dx], p - 2, p)
        for i in range(dx + 1):
            out[i] = x[i] * inv % p
    return dx


cdef int c_ppowmod(long long* base, int dbase, long long e, long long* mod,
                   int dmod, long long p, long long* out) nogil:
    cdef long long res[MAXD2]
    cdef long long b[MAXD2]
    cdef long long tmp[MAXD2]
    cdef int dres = 0, db, i, dtmp
    res[0] = 1
    for i in range(dbase + 1):
        b[i] = base[i]
    db = c_prem(b, dbase, mod, dmod, p)
    while e:
        if e & 1:
            dtmp = c_pmul(res, dres, b, db, tmp, p)
            dtmp = c_prem(tmp, dtmp, mod, dmod, p)
            for i in range(dtmp + 1):
                res[i] = tmp[i]
            dres = dtmp
            if dres < 0:
                break
        e >>= 1
        if e:
            dtmp = c_pmul(b, db, b, db, tmp, p)
            dtmp = c_prem(tmp, dtmp, mod, dmod, p)
            for i in range(dtmp + 1):
                b[i] = tmp[i]
            db = dtmp
    for i in range(dres + 1):
        out[i] = res[i]
    return dres


cdef int c_split_linear(long long* s, int ds, long long p, long long* roots,
                        int nroots, long long a0) nogil:
    # s: monic product of distinct linear factors; appends its roots
    cdef long long h[MAXD2]
    cdef long long g[MAXD2]
    cdef long long cof[MAXD2]
    cdef long long scopy[MAXD2]
    cdef long long shiftp[2]
    cdef long long a = a0
    cdef int dh, dg, dcof, i
    if ds <= 0:
        return nroots
    if ds == 1:
        roots[nroots] = (p - s[0]) % p
        return nroots + 1
    while True:
        shiftp[0] = a % p
        shiftp[1] = 1
        dh = c_ppowmod(shiftp, 1, (p - 1) / 2, s, ds, p, h)
        if dh < 0:
            dh = 0
            h[0] = p - 1
        else:
            h[0] = (h[0] - 1) % p
            if h[0] < 0:
                h[0] += p
            dh = c_trim(h, dh)
        if dh >= 0:
            dg = c_pgcd(h, dh, s, ds, p, g)
            if 0 < dg < ds:
                for i in range(ds + 1):
                    scopy[i] = s[i]
                dcof = c_pquo(scopy, ds, g, dg, cof, p)
                nroots = c_split_linear(g, dg, p, roots, nroots, a + 1)
                nroots = c_split_linear(cof, dcof, p, roots, nroots, a + 1)
                return nroots
        a += 1


cdef int c_roots_mod_p(long long* coeffs, int deg, long long p,
                       long long* roots) nogil:
    cdef long long c[MAXD]
    cdef long long d[MAXD]
    cdef long long g[MAXD2]
    cdef long long sf[MAXD2]
    cdef long long ccopy[MAXD2]
    cdef long long xp[MAXD2]
    cdef long long diff[MAXD2]
    cdef long long lin[MAXD2]
    cdef long long xpoly[2]
    cdef long long acc
    cdef int dc, dd, dg, dsf, dxp, ddiff, dlin, i, cnt
    cdef long long x
    for i in range(deg + 1):
        c[i] = coeffs[i] % p
        if c[i] < 0:
            c[i] += p
    dc = c_trim(c, deg)
    if dc <= 0:
        return 0
    if p < 50:
        cnt = 0
        for x in range(p):
            acc = 0
            for i in range(dc, -1, -1):
                acc = (acc * x + c[i]) % p
            if acc == 0:
                roots[cnt] = x
                cnt += 1
        return cnt
    for i in range(1, dc + 1):
        d[i - 1] = (i % p) * c[i] % p
    dd = c_trim(d, dc - 1)
    dg = c_pgcd(c, dc, d, dd, p, g)
    if dg >= 1:
        for i in range(dc + 1):
            ccopy[i] = c[i]
        dsf = c_pquo(ccopy, dc, g, dg, sf, p)
    else:
        dsf = dc
        for i in range(dc + 1):
            sf[i] = c[i]
    xpoly[0] = 0
    xpoly[1] = 1
    dxp = c_ppowmod(xpoly, 1, p, sf, dsf, p, xp)
    # diff = xp - x
    ddiff = dxp if dxp >= 1 else 1
    for i in range(ddiff + 1):
        diff[i] = xp[i] if i <= dxp else 0
    diff[1] = (diff[1] - 1) % p
    if diff[1] < 0:
        diff[1] += p
    ddiff = c_trim(diff, ddiff)
    if ddiff < 0:
        # x^p == x on all of sf: sf splits into linear factors entirely
        dlin = dsf
        for i in range(dsf + 1):
            lin[i] = sf[i]
        # monicize
        acc = c_powmod(lin[dlin], p - 2, p)
        for i in range(dlin + 1):
            lin[i] = lin[i] * acc % p
    else:
        dlin = c_pgcd(diff, ddiff, sf, dsf, p, lin)
    if dlin <= 0:
        return 0
    return c_split_linear(lin, dlin, p, roots, 0, 0)


def poly_roots_mod_p(coeffs, p):
    """Sorted roots of the polynomial (low-to-high coeffs) mod the prime p."""
    cdef long long cp = p
    cdef long long cbuf[MAXD]
    cdef long long rbuf[MAXD]
    cdef int deg, i, nr
    if cp >= (<long long>1) << 31:
        from . import _kernels_py
        return _kernels_py.poly_roots_mod_p(coeffs, p)
    cl = [int(a) % p for a in coeffs]
    while cl and cl[len(cl) - 1] == 0:
        cl.pop()
    if not cl:
        raise ValueError("polynomial vanishes identically mod p")
    deg = len(cl) - 1
    if deg >= MAXD:
        raise ValueError("degree too large for compiled kernel")
    for i in range(deg + 1):
        cbuf[i] = cl[i]
    nr = c_roots_mod_p(cbuf, deg, cp, rbuf)
    return sorted([rbuf[i] for i in range(nr)])


def squarefree_mask(n):
    """uint8 array of length n+1; entry i is 1 iff i is square-free."""
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] mask = np.ones(n + 1, dtype=np.uint8)
    cdef long long i, p, q, nn = n
    mask[0] = 0
    p = 2
    while p * p <= nn:
        if mask[p]:
            q = p * p
            i = q
            while i <= nn:
                mask[i] = 0
                i += q
        p += 1
    return mask


def value_square_profile(coeffs, n, b):
    """Square-part profile of P(x), x = 1..N, trial bound B.

    Same contract as _kernels_py.value_square_profile.
    """
    cdef long long nn = n, bb = b
    cdef long long cbuf[MAXD]
    cdef long long rbuf[MAXD]
    cdef long long p, x, val, v, vt, r, first, acc, vcont, contleft
    cdef int deg, i, nr, k
    cdef long long ntrip = 0, captrip

    coeffs = [int(a) for a in coeffs]
    cont = 0
    for a in coeffs:
        cont = math.gcd(cont, a)
    if cont == 0:
        raise ValueError("zero polynomial")
    prim = [a // cont for a in coeffs]
    cont = abs(cont)
    from . import _kernels_py
    msk = _kernels_py.squarefree_mask(cont) if cont > 1 else None
    if cont > 1 and not msk[cont]:
        # content with a square factor: rare; delegate to the pure backend
        return _kernels_py.value_square_profile(coeffs, n, b)
    vmax = sum(abs(a) * n**i for i, a in enumerate(prim))
    if vmax >= 2**62 or bb >= (<long long>1) << 31:
        return _kernels_py.value_square_profile(coeffs, n, b)
    if cont > 1:
        cc = cont
        for q in range(2, cont + 1):
            while cc % q == 0:
                if q > b:
                    raise ValueError("content has a prime factor beyond B")
                cc //= q
    deg = len(prim) - 1
    while deg > 0 and prim[deg] == 0:
        deg -= 1
    if deg >= MAXD:
        return _kernels_py.value_square_profile(coeffs, n, b)
    for i in range(deg + 1):
        cbuf[i] = prim[i]

    cdef cnp.ndarray[cnp.int64_t, ndim=1] rem = np.zeros(nn + 1, dtype=np.int64)
    cdef long long* remp = <long long*>cnp.PyArray_DATA(rem)
    with nogil:
        for x in range(nn + 1):
            acc = 0
            for i in range(deg, -1, -1):
                acc = acc * x + cbuf[i]
            if acc < 0:
                acc = -acc
            remp[x] = acc
        remp[0] = 1

    # prime sieve up to B
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] pm = np.ones(bb + 1, dtype=np.uint8)
    pm[0] = 0
    if bb >= 1:
        pm[1] = 0
    cdef unsigned char* pmp = <unsigned char*>cnp.PyArray_DATA(pm)
    with nogil:
        p = 2
        while p * p <= bb:
            if pmp[p]:
                x = p * p
                while x <= bb:
                    pmp[x] = 0
                    x += p
            p += 1

    captrip = 1024
    xs = np.zeros(captrip, dtype=np.int64)
    ps = np.zeros(captrip, dtype=np.int64)
    vs = np.zeros(captrip, dtype=np.int64)
    cdef long long* xsp = <long long*>cnp.PyArray_DATA(xs)
    cdef long long* psp = <long long*>cnp.PyArray_DATA(ps)
    cdef long long* vsp = <long long*>cnp.PyArray_DATA(vs)

    ccont = cont
    for p in range(2, bb + 1):
        if not pmp[p]:
            continue
        vcont = 0
        while ccont % p == 0:
            ccont //= p
            vcont += 1
        nr = c_roots_mod_p(cbuf, deg, p, rbuf)
        for k in range(nr):
            r = rbuf[k]
            first = r if r >= 1 else p
            x = first
            while x <= nn:
                val = remp[x]
                if val != 0:
                    v = 0
                    while val % p == 0:
                        val //= p
                        v += 1
                    remp[x] = val
                    vt = v + vcont
                    if vt >= 2:
                        if ntrip == captrip:
                            captrip *= 2
                            xs2 = np.zeros(captrip, dtype=np.int64)
                            xs2[:ntrip] = xs
                            xs = xs2
                            ps2 = np.zeros(captrip, dtype=np.int64)
                            ps2[:ntrip] = ps
                            ps = ps2
                            vs2 = np.zeros(captrip, dtype=np.int64)
                            vs2[:ntrip] = vs
                            vs = vs2
                            xsp = <long long*>cnp.PyArray_DATA(xs)
                            psp = <long long*>cnp.PyArray_DATA(ps)
                            vsp = <long long*>cnp.PyArray_DATA(vs)
                        xsp[ntrip] = x
                        psp[ntrip] = p
                        vsp[ntrip] = vt
                        ntrip += 1
                x += p

    remp[0] = 1
    return xs[:ntrip].copy(), ps[:ntrip].copy(), vs[:ntrip].copy(), rem
