# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Semantics match rsdensity._pykernels exactly."""

from libc.stdlib cimport malloc, calloc, free
from libc.math cimport sqrt

cdef extern from "complex.h":
    double cabs(double complex)


def schur_ssyt(mu, x):
    """Schur polynomial s_mu(x) as a sum over semistandard tableaux.

    Dynamic program over Gelfand-Tsetlin levels: level k holds s_nu(x_1..x_k)
    for every shape nu inside mu, indexed in mixed radix (mu_i + 1).
    """
    cdef int n = len(x)
    cdef int l = len(mu)
    cdef int i, j, k, deg = 0, nsize, ksize, ok
    cdef long S = 1, idx, kidx, rem
    if l > n:
        raise ValueError("partition longer than the number of variables")
    if n == 0:
        return complex(1.0)
    for i in range(l):
        deg += mu[i]
    cdef int stride = deg + 1
    cdef int *lam = <int *> calloc(n, sizeof(int))
    cdef long *place = <long *> calloc(n, sizeof(long))
    cdef int *nu = <int *> calloc(n, sizeof(int))
    cdef int *kap = <int *> calloc(n, sizeof(int))
    cdef double complex *pw = <double complex *> malloc(n * stride * sizeof(double complex))
    cdef double complex *prev = NULL
    cdef double complex *cur = NULL
    cdef double complex *tmp
    cdef double complex xv, acc, val
    if lam == NULL or place == NULL or nu == NULL or kap == NULL or pw == NULL:
        free(lam); free(place); free(nu); free(kap); free(pw)
        raise MemoryError()
    try:
        for i in range(l):
            lam[i] = mu[i]
        for i in range(n):
            place[i] = S
            S *= lam[i] + 1
        prev = <double complex *> calloc(S, sizeof(double complex))
        cur = <double complex *> calloc(S, sizeof(double complex))
        if prev == NULL or cur == NULL:
            raise MemoryError()
        for j in range(n):
            xv = x[j]
            pw[j * stride] = 1.0
            for i in range(1, stride):
                pw[j * stride + i] = pw[j * stride + i - 1] * xv
        # level 1: one-row shapes (m) give x_1^m
        for i in range(lam[0] + 1):
            prev[i * place[0]] = pw[i]
        for k in range(2, n + 1):
            for idx in range(S):
                cur[idx] = 0
                rem = idx
                ok = 1
                nsize = 0
                for i in range(n):
                    nu[i] = rem % (lam[i] + 1)
                    rem //= lam[i] + 1
                    nsize += nu[i]
                    if i >= k and nu[i] != 0:
                        ok = 0
                    if i > 0 and nu[i] > nu[i - 1]:
                        ok = 0
                if not ok:
                    continue
                # kappa interlaces nu: nu[i+1] <= kappa[i] <= nu[i], i < k-1
                for i in range(k - 1):
                    kap[i] = nu[i + 1]
                acc = 0
                while True:
                    kidx = 0
                    ksize = 0
                    for i in range(k - 1):
                        kidx += kap[i] * place[i]
                        ksize += kap[i]
                    acc += pw[(k - 1) * stride + nsize - ksize] * prev[kidx]
                    i = k - 2
                    while i >= 0:
                        if kap[i] < nu[i]:
                            kap[i] += 1
                            break
                        kap[i] = nu[i + 1]
                        i -= 1
                    if i < 0:
                        break
                cur[idx] = acc
            tmp = prev
            prev = cur
            cur = tmp
        val = prev[S - 1]
    finally:
        free(lam); free(place); free(nu); free(kap); free(pw); free(prev); free(cur)
    return complex(val)


def residue_prime_counts(long long x, long long q, long long segment=1 << 18):
    """Count primes p <= x in each residue class mod q by a segmented sieve.

    Returns (counts, total) with counts a list of length q. Segments store odd
    numbers only; the prime 2 is added separately.
    """
    cdef long long i, j, p, lo, hi, start, root, nbase = 0, total = 0, span
    cdef long long qq = q
    if q < 1:
        raise ValueError("modulus must be positive")
    counts_py = [0] * q
    if x < 2:
        return counts_py, 0
    root = <long long> sqrt(<double> x)
    while root * root > x:
        root -= 1
    while (root + 1) * (root + 1) <= x:
        root += 1
    cdef unsigned char *small = <unsigned char *> calloc(root + 1, 1)
    cdef long long *base = <long long *> malloc((root + 1) * sizeof(long long))
    cdef unsigned char *seg = <unsigned char *> malloc(segment)
    cdef long long *counts = <long long *> calloc(q, sizeof(long long))
    if small == NULL or base == NULL or seg == NULL or counts == NULL:
        free(small); free(base); free(seg); free(counts)
        raise MemoryError()
    try:
        for i in range(3, root + 1, 2):
            if small[i] == 0:
                base[nbase] = i
                nbase += 1
                j = i * i
                while j <= root:
                    small[j] = 1
                    j += 2 * i
        counts[2 % qq] += 1
        total = 1
        # seg[i] stands for the odd number lo + 2i
        lo = 3
        while lo <= x:
            hi = lo + 2 * segment
            if hi > x + 1:
                hi = x + 1
            span = (hi - lo + 1) // 2
            for i in range(span):
                seg[i] = 1
            for j in range(nbase):
                p = base[j]
                if p * p >= hi:
                    break
                start = ((lo + p - 1) // p) * p
                if start < p * p:
                    start = p * p
                if start % 2 == 0:
                    start += p
                i = (start - lo) // 2
                while i < span:
                    seg[i] = 0
                    i += p
            for i in range(span):
                if seg[i]:
                    counts[(lo + 2 * i) % qq] += 1
                    total += 1
            lo += 2 * segment
        for i in range(q):
            counts_py[i] = counts[i]
    finally:
        free(small); free(base); free(seg); free(counts)
    return counts_py, total


def power_sum_scan(z, int K, double lead):
    """First k in [K, 2K] with |sum z_i^k| >= (lead/50)^k.

    Returns (k, |sum|, threshold) for the witness, or (-1, best, thr) where
    best is the largest ratio |sum|/threshold seen.
    """
    cdef int nz = len(z)
    cdef int i, k
    cdef double complex *cur = <double complex *> malloc(max(nz, 1) * sizeof(double complex))
    cdef double complex *base = <double complex *> malloc(max(nz, 1) * sizeof(double complex))
    cdef double complex s
    cdef double thr, r = lead / 50.0, mag, best = 0.0
    if cur == NULL or base == NULL:
        free(cur); free(base)
        raise MemoryError()
    try:
        for i in range(nz):
            base[i] = z[i]
            cur[i] = 1.0
        for k in range(1, K):
            for i in range(nz):
                cur[i] = cur[i] * base[i]
        thr = 1.0
        for k in range(K):
            thr *= r
        for k in range(K, 2 * K + 1):
            s = 0
            for i in range(nz):
                cur[i] = cur[i] * base[i]
                s += cur[i]
            mag = cabs(s)
            if mag >= thr:
                return k, mag, thr
            if thr > 0 and mag / thr > best:
                best = mag / thr
            thr *= r
    finally:
        free(cur); free(base)
    return -1, best, 0.0
