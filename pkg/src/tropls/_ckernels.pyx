# cython: language_level=3
"""Compiled exact-integer kernels.

Same four entry points as the pure module, same scan orders, same
return values; the dispatcher routes here only inside the integer
bounds that keep every intermediate in int64 (fraction-free
elimination bounds the hull solve by Hadamard's inequality).
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport malloc, free

cdef extern from *:
    ctypedef long long int128 "__int128"

BACKEND_NAME = "compiled"


cdef int _bsearch(uint64_t* arr, int count, uint64_t key) nogil:
    cdef int lo = 0, hi = count - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if arr[mid] == key:
            return mid
        if arr[mid] < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return -1


cdef int _exchange_scan(uint64_t* fam, int count, uint64_t* out_b1,
                        uint64_t* out_b2, int* out_x) nogil:
    # fam must be sorted ascending and deduplicated
    cdef int i, j, xpos
    cdef uint64_t b1, b2, only1, only2, rest, xbit, removed, swap, ybit
    cdef bint ok
    for i in range(count):
        b1 = fam[i]
        for j in range(count):
            b2 = fam[j]
            only1 = b1 & ~b2
            if not only1:
                continue
            only2 = b2 & ~b1
            rest = only1
            while rest:
                xbit = rest & (~rest + 1)
                rest ^= xbit
                removed = b1 ^ xbit
                swap = only2
                ok = False
                while swap:
                    ybit = swap & (~swap + 1)
                    swap ^= ybit
                    if _bsearch(fam, count, removed | ybit) >= 0:
                        ok = True
                        break
                if not ok:
                    xpos = 0
                    while not (xbit >> xpos) & 1:
                        xpos += 1
                    out_b1[0] = b1
                    out_b2[0] = b2
                    out_x[0] = xpos
                    return 1
    return 0


def exchange_witness(masks, int n):
    """First failure of basis exchange over a family of same-size sets.

    Returns (B1, B2, x) in ascending scan order where no y in B2 \\ B1
    makes B1 - x + y a member, or None when the family is the basis
    set of a matroid.
    """
    cdef list ordered = sorted(set(masks))
    cdef int count = len(ordered)
    cdef uint64_t* fam = <uint64_t*> malloc((count if count else 1) * sizeof(uint64_t))
    if fam == NULL:
        raise MemoryError()
    cdef int i
    for i in range(count):
        fam[i] = <uint64_t> ordered[i]
    cdef uint64_t b1 = 0, b2 = 0
    cdef int xpos = 0, hit
    hit = _exchange_scan(fam, count, &b1, &b2, &xpos)
    free(fam)
    if hit:
        return (int(b1), int(b2), xpos)
    return None


def matroid_catalog(int n, int d):
    """Family masks of every rank-d matroid on n elements, ascending."""
    cdef list subsets = _colex_masks(n, d)
    cdef int m = len(subsets)
    if m > 22:
        raise ValueError("catalog enumeration is limited to comb(n, d) <= 22")
    cdef uint64_t* masks = <uint64_t*> malloc(m * sizeof(uint64_t))
    cdef uint64_t* fam = <uint64_t*> malloc((m if m else 1) * sizeof(uint64_t))
    if masks == NULL or fam == NULL:
        if masks != NULL:
            free(masks)
        if fam != NULL:
            free(fam)
        raise MemoryError()
    cdef int i
    for i in range(m):
        masks[i] = <uint64_t> subsets[i]
    cdef list out = []
    cdef uint64_t fam_mask, top = (<uint64_t> 1) << m
    cdef int count
    cdef uint64_t b1, b2
    cdef int xpos
    # subset masks ascend with the index, so the family stays sorted
    for fam_mask in range(1, top):
        count = 0
        for i in range(m):
            if (fam_mask >> i) & 1:
                fam[count] = masks[i]
                count += 1
        if not _exchange_scan(fam, count, &b1, &b2, &xpos):
            out.append(int(fam_mask))
    free(masks)
    free(fam)
    return out


cdef list _colex_masks(int n, int d):
    # ascending bitmask order is exactly colex on d-subsets
    cdef list out = []
    cdef uint64_t v, t, c, r
    if d < 0 or d > n:
        raise ValueError("no such subsets")
    if d == 0:
        return [0]
    v = ((<uint64_t> 1) << d) - 1
    cdef uint64_t limit = (<uint64_t> 1) << n
    while v < limit:
        out.append(int(v))
        t = v | (v - 1)
        c = v & (~v + 1)
        r = (t + 1) | (((~t & (t + 1)) - 1) >> (_ctz(c) + 1))
        if r == v:
            break
        v = r
    return out


cdef int _ctz(uint64_t x) nogil:
    cdef int k = 0
    while not (x >> k) & 1:
        k += 1
    return k


def lower_hull_facets(int n, int d, scaled):
    """Facet cells of the regular subdivision induced by integer heights.

    Identical semantics to the reference: supporting affine functions
    found on affinely independent n-point subsets, tight set reported
    as a family mask; deduplicated ascending.  Arithmetic is
    fraction-free (Bareiss), exact inside int64 for the dispatcher's
    bounds.
    """
    cdef list subsets = _colex_masks(n, d)
    cdef int m = len(subsets)
    if m == 1:
        return [1]
    if m > 63:
        raise ValueError("hull kernel is limited to comb(n, d) <= 63")
    cdef int64_t* heights = <int64_t*> malloc(m * sizeof(int64_t))
    cdef int64_t* pts = <int64_t*> malloc(m * n * sizeof(int64_t))
    # A is the n x (n+1) augmented system, sol the Cramer numerators
    cdef int64_t* A = <int64_t*> malloc(n * (n + 1) * sizeof(int64_t))
    cdef int64_t* sol = <int64_t*> malloc(n * sizeof(int64_t))
    cdef int* cand = <int*> malloc(n * sizeof(int))
    if (heights == NULL or pts == NULL or A == NULL or sol == NULL
            or cand == NULL):
        if heights != NULL: free(heights)
        if pts != NULL: free(pts)
        if A != NULL: free(A)
        if sol != NULL: free(sol)
        if cand != NULL: free(cand)
        raise MemoryError()
    cdef int i, j
    for i in range(m):
        heights[i] = <int64_t> scaled[i]
    cdef uint64_t bits
    for i in range(m):
        bits = <uint64_t> subsets[i]
        for j in range(n - 1):
            pts[i * n + j] = (bits >> j) & 1
        pts[i * n + (n - 1)] = 1
    found = set()
    # lexicographic n-combinations of point indices
    for j in range(n):
        cand[j] = j
    cdef int64_t den
    cdef bint good
    cdef int k
    cdef int64_t s
    cdef uint64_t fam
    while True:
        for i in range(n):
            k = cand[i]
            for j in range(n):
                A[i * (n + 1) + j] = pts[k * n + j]
            A[i * (n + 1) + n] = heights[k]
        den = _bareiss_solve(A, sol, n)
        if den != 0:
            if den < 0:
                den = -den
                for j in range(n):
                    sol[j] = -sol[j]
            good = True
            fam = 0
            for i in range(m):
                s = heights[i] * den
                for j in range(n):
                    if pts[i * n + j]:
                        s -= sol[j]
                if s < 0:
                    good = False
                    break
                if s == 0:
                    fam |= (<uint64_t> 1) << i
            if good:
                found.add(int(fam))
        # advance to the next combination
        i = n - 1
        while i >= 0 and cand[i] == m - n + i:
            i -= 1
        if i < 0:
            break
        cand[i] += 1
        for j in range(i + 1, n):
            cand[j] = cand[j - 1] + 1
    free(heights)
    free(pts)
    free(A)
    free(sol)
    free(cand)
    return sorted(found)


cdef int64_t _bareiss_solve(int64_t* A, int64_t* sol, int n) nogil:
    """Fraction-free elimination of the n x (n+1) system in place.

    Returns the determinant of the coefficient block (0 if singular,
    sign reflecting any row swaps, which leaves the solution intact)
    and fills sol with den * x, so x_j = sol[j] / den exactly.  Every
    division below is exact; intermediates ride in 128 bits.
    """
    cdef int w = n + 1
    cdef int i, j, k, piv
    cdef int64_t prev = 1, tmp
    cdef int128 num
    for k in range(n):
        piv = -1
        for i in range(k, n):
            if A[i * w + k] != 0:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != k:
            for j in range(w):
                tmp = A[k * w + j]
                A[k * w + j] = A[piv * w + j]
                A[piv * w + j] = tmp
        for i in range(k + 1, n):
            for j in range(k + 1, w):
                num = (<int128> A[i * w + j]) * A[k * w + k] \
                      - (<int128> A[i * w + k]) * A[k * w + j]
                A[i * w + j] = <int64_t> (num / prev)
            A[i * w + k] = 0
        prev = A[k * w + k]
    cdef int64_t den = A[(n - 1) * w + (n - 1)]
    # back substitution scaled so every x_j has the common denominator den
    cdef int128 acc
    for i in range(n - 1, -1, -1):
        acc = (<int128> A[i * w + n]) * den
        for j in range(i + 1, n):
            acc -= (<int128> A[i * w + j]) * sol[j]
        sol[i] = <int64_t> (acc / A[i * w + i])
    return den


def validate_relations(int n, int d, scaled):
    """First violated four-term minimum relation, or None.

    Scans supports in colex order, then disjoint quadruples in colex
    order; a violation is (support_bits, quad_bits) where the minimum
    of the three pair sums is attained only once.
    """
    if d < 2 or n - d < 2:
        return None
    cdef list dsub = _colex_masks(n, d)
    cdef int m = len(dsub)
    cdef int64_t* heights = <int64_t*> malloc(m * sizeof(int64_t))
    if heights == NULL:
        raise MemoryError()
    cdef int i
    for i in range(m):
        heights[i] = <int64_t> scaled[i]
    # colex rank of a d-subset: sum of C(bitpos_t, t+1) over its bits
    cdef int64_t* binom = <int64_t*> malloc((n + 1) * (n + 1) * sizeof(int64_t))
    if binom == NULL:
        free(heights)
        raise MemoryError()
    cdef int j
    for i in range(n + 1):
        for j in range(n + 1):
            if j == 0:
                binom[i * (n + 1) + j] = 1
            elif j > i:
                binom[i * (n + 1) + j] = 0
            elif i == 0:
                binom[i * (n + 1) + j] = 0
            else:
                binom[i * (n + 1) + j] = (binom[(i - 1) * (n + 1) + j]
                                          + binom[(i - 1) * (n + 1) + (j - 1)])
    cdef list supports = _colex_masks(n, d - 2)
    cdef list quads = _colex_masks(n, 4)
    cdef int nq = len(quads)
    cdef uint64_t sbits, qbits, e, rest
    cdef int qi
    cdef int pos[4]
    cdef int t
    cdef int64_t a, b, c, lo
    cdef int hits
    result = None
    for s_obj in supports:
        sbits = <uint64_t> s_obj
        for qi in range(nq):
            qbits = <uint64_t> quads[qi]
            if qbits & sbits:
                continue
            rest = qbits
            t = 0
            while rest:
                e = rest & (~rest + 1)
                pos[t] = _ctz(e)
                rest ^= e
                t += 1
            a = (heights[_colex_rank(sbits | ((<uint64_t>1) << pos[0]) | ((<uint64_t>1) << pos[1]), binom, n)]
                 + heights[_colex_rank(sbits | ((<uint64_t>1) << pos[2]) | ((<uint64_t>1) << pos[3]), binom, n)])
            b = (heights[_colex_rank(sbits | ((<uint64_t>1) << pos[0]) | ((<uint64_t>1) << pos[2]), binom, n)]
                 + heights[_colex_rank(sbits | ((<uint64_t>1) << pos[1]) | ((<uint64_t>1) << pos[3]), binom, n)])
            c = (heights[_colex_rank(sbits | ((<uint64_t>1) << pos[0]) | ((<uint64_t>1) << pos[3]), binom, n)]
                 + heights[_colex_rank(sbits | ((<uint64_t>1) << pos[1]) | ((<uint64_t>1) << pos[2]), binom, n)])
            lo = a
            if b < lo:
                lo = b
            if c < lo:
                lo = c
            hits = 0
            if a == lo:
                hits += 1
            if b == lo:
                hits += 1
            if c == lo:
                hits += 1
            if hits < 2:
                result = (int(sbits), int(qbits))
                break
        if result is not None:
            break
    free(heights)
    free(binom)
    return result


cdef int _colex_rank(uint64_t bits, int64_t* binom, int n) nogil:
    cdef int rank = 0, t = 0, p
    cdef uint64_t e, rest = bits
    while rest:
        e = rest & (~rest + 1)
        p = _ctz(e)
        rest ^= e
        t += 1
        rank += <int> binom[p * (n + 1) + t]
    return rank
