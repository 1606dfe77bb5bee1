# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: stopping-matrix enumeration and listing trials.

Bit-identical to the pure-Python kernels in ``_kernels_py``; the mixing
constants below mirror ``_bits.py`` and must stay in sync with it.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memset

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 PHI64 = 0x9E3779B97F4A7C15ULL
cdef u64 LANE_SALT = 0x85EBCA77C2B2AE63ULL
cdef u64 TRIAL_SALT = 0xC2B2AE3D27D4EB4FULL

cdef int SCHEME_PARTITIONED = 0
cdef int KEYS_DISTINCT = 1


cdef inline u64 mix64(u64 x) nogil:
    x ^= x >> 30
    x *= 0xBF58476D1CE4E5B9ULL
    x ^= x >> 27
    x *= 0x94D049BB133111EBULL
    x ^= x >> 31
    return x


def count_stopping_matrices(i64 ell, i64 n):
    """Count stopping matrices by odometer over all ell**n column placements.

    Row occupancies and the number of weight-1 rows are maintained
    incrementally, so the whole enumeration is O(1) amortized per matrix.
    """
    if n == 0:
        return 1
    cdef int *cols = <int *> calloc(n, sizeof(int))
    cdef i64 *rowcnt = <i64 *> calloc(ell, sizeof(i64))
    if cols == NULL or rowcnt == NULL:
        free(cols)
        free(rowcnt)
        raise MemoryError()
    cdef u64 stopping = 0
    cdef i64 j, r, v
    cdef i64 singles
    with nogil:
        rowcnt[0] = n
        singles = 1 if n == 1 else 0
        while True:
            if singles == 0:
                stopping += 1
            j = 0
            while j < n:
                r = cols[j]
                v = rowcnt[r] - 1
                rowcnt[r] = v
                if v == 0:
                    singles -= 1
                elif v == 1:
                    singles += 1
                if r + 1 < ell:
                    cols[j] = r + 1
                    v = rowcnt[r + 1] + 1
                    rowcnt[r + 1] = v
                    if v == 1:
                        singles += 1
                    elif v == 2:
                        singles -= 1
                    break
                else:
                    cols[j] = 0
                    v = rowcnt[0] + 1
                    rowcnt[0] = v
                    if v == 1:
                        singles += 1
                    elif v == 2:
                        singles -= 1
                    j += 1
            if j == n:
                break
    free(cols)
    free(rowcnt)
    return stopping


def run_trials(u64 seed, i64 t_lo, i64 t_hi, int n, int ell, int k, int b,
               int scheme, int key_model):
    """Run listing trials [t_lo, t_hi); returns (failures, size-2 residuals).

    Stream layout per trial: interleaved key/value outputs, with rejected
    distinct-key candidates each consuming one output.
    """
    cdef u64 mask = <u64> 0xFFFFFFFFFFFFFFFFULL if b == 64 else ((<u64> 1 << b) - 1)
    cdef int m = ell * k
    cdef int s_bits = b // k if k > 0 else 0
    cdef int field = ell - 1

    cdef int *cnt = <int *> malloc(m * sizeof(int))
    cdef u64 *ksum = <u64 *> malloc(m * sizeof(u64))
    cdef u64 *keys = <u64 *> malloc(n * sizeof(u64))
    cdef int *stack = <int *> malloc((m + n * k + 8) * sizeof(int))
    cdef u64 *lanes = <u64 *> malloc(k * sizeof(u64))
    cdef size_t cap = 1
    while cap < <size_t> (4 * n):
        cap <<= 1
    cdef u64 *slots = <u64 *> malloc(cap * sizeof(u64))
    cdef unsigned char *used = <unsigned char *> calloc(cap, 1)
    if (cnt == NULL or ksum == NULL or keys == NULL or stack == NULL
            or lanes == NULL or slots == NULL or used == NULL):
        free(cnt); free(ksum); free(keys); free(stack)
        free(lanes); free(slots); free(used)
        raise MemoryError()

    cdef u64 trial_base = mix64(seed ^ TRIAL_SALT)
    cdef u64 lane_base = mix64(seed ^ LANE_SALT)
    cdef int i
    for i in range(k):
        lanes[i] = mix64(lane_base + (<u64> (i + 1)) * PHI64)

    cdef i64 failures = 0
    cdef i64 two_left = 0
    cdef i64 t, left
    cdef u64 st, ctr, x
    cdef size_t pos
    cdef int j, c, ci, top, recovered
    with nogil:
        for t in range(t_lo, t_hi):
            st = mix64(trial_base + (<u64> (t + 1)) * PHI64)
            ctr = 0
            if key_model == KEYS_DISTINCT:
                memset(used, 0, cap)
                for j in range(n):
                    while True:
                        ctr += 1
                        x = mix64(st + ctr * PHI64) & mask
                        pos = <size_t> x & (cap - 1)
                        while used[pos] and slots[pos] != x:
                            pos = (pos + 1) & (cap - 1)
                        if not used[pos]:
                            break
                    used[pos] = 1
                    slots[pos] = x
                    keys[j] = x
                    ctr += 1  # value draw
            else:
                for j in range(n):
                    ctr += 1
                    keys[j] = mix64(st + ctr * PHI64) & mask
                    ctr += 1  # value draw

            memset(cnt, 0, m * sizeof(int))
            memset(ksum, 0, m * sizeof(u64))
            for j in range(n):
                x = keys[j]
                for i in range(k):
                    if scheme == SCHEME_PARTITIONED:
                        c = i * ell + <int> (mix64(x ^ lanes[i]) % <u64> ell)
                    else:
                        c = i * ell + <int> ((x >> (s_bits * (k - 1 - i))) & <u64> field)
                    cnt[c] += 1
                    ksum[c] ^= x

            top = 0
            for c in range(m):
                if cnt[c] == 1:
                    stack[top] = c
                    top += 1
            recovered = 0
            while top:
                top -= 1
                c = stack[top]
                if cnt[c] != 1:
                    continue
                x = ksum[c]
                recovered += 1
                for i in range(k):
                    if scheme == SCHEME_PARTITIONED:
                        ci = i * ell + <int> (mix64(x ^ lanes[i]) % <u64> ell)
                    else:
                        ci = i * ell + <int> ((x >> (s_bits * (k - 1 - i))) & <u64> field)
                    cnt[ci] -= 1
                    ksum[ci] ^= x
                    if cnt[ci] == 1:
                        stack[top] = ci
                        top += 1
            left = n - recovered
            if left > 0:
                failures += 1
                if left == 2:
                    two_left += 1

    free(cnt); free(ksum); free(keys); free(stack)
    free(lanes); free(slots); free(used)
    return failures, two_left
