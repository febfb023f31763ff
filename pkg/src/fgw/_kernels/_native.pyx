# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Native kernel twin of pure.py; same functions, uint64 keys.

Keys must stay below 2**64, which bounds the word length by roughly
63/log2(2k) letters; every entry point checks the bound and raises
ValueError instead of overflowing.  The enumeration caps upstream keep
real workloads far inside it.
"""

from libc.stdint cimport int64_t, uint64_t
from libcpp.algorithm cimport sort
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

from cython.operator cimport dereference as deref
from cython.operator cimport preincrement as inc


cdef uint64_t _UMAX = <uint64_t> - 1


cdef int _capacity(int two_k):
    # largest word length whose key is guaranteed to fit in uint64
    cdef int length = 0
    cdef uint64_t v = <uint64_t> two_k
    while v <= _UMAX // <uint64_t> two_k:
        v *= <uint64_t> two_k
        length += 1
    return length


cdef inline int _len(int two_k, uint64_t key) nogil:
    cdef int n = 0
    while key > 1:
        key //= <uint64_t> two_k
        n += 1
    return n


cdef vector[int] _decode(int two_k, uint64_t key):
    cdef vector[int] out
    cdef vector[int] rev
    while key > 1:
        rev.push_back(<int> (key % <uint64_t> two_k))
        key //= <uint64_t> two_k
    cdef int i
    for i in range(<int> rev.size() - 1, -1, -1):
        out.push_back(rev[i])
    return out


def len_key(int two_k, key) -> int:
    return _len(two_k, <uint64_t> key)


def inv_key(int two_k, key) -> int:
    cdef uint64_t k = <uint64_t> key
    cdef uint64_t out = 1
    cdef int c
    while k > 1:
        c = <int> (k % <uint64_t> two_k)
        k //= <uint64_t> two_k
        out = out * <uint64_t> two_k + <uint64_t> (c ^ 1)
    return out


def mul_key(int two_k, ka, kb) -> int:
    cdef uint64_t a = <uint64_t> ka
    cdef uint64_t b = <uint64_t> kb
    if _len(two_k, a) + _len(two_k, b) > _capacity(two_k):
        raise ValueError("word length exceeds native key capacity")
    cdef vector[int] bl = _decode(two_k, b)
    cdef int i = 0
    cdef int nb = <int> bl.size()
    while a > 1 and i < nb and <int> (a % <uint64_t> two_k) == (bl[i] ^ 1):
        a //= <uint64_t> two_k
        i += 1
    cdef uint64_t out = a
    while i < nb:
        out = out * <uint64_t> two_k + <uint64_t> bl[i]
        i += 1
    return out


cdef vector[uint64_t] _sphere_keys(int two_k, int n):
    cdef vector[uint64_t] keys
    cdef vector[int] word
    cdef int i, j, c, banned
    cdef uint64_t key
    if n == 0:
        keys.push_back(1)
        return keys
    word.resize(n)
    word[0] = 0
    for i in range(1, n):
        if word[i - 1] != 1:
            word[i] = 0
        else:
            word[i] = 1
    while True:
        key = 1
        for i in range(n):
            key = key * <uint64_t> two_k + <uint64_t> word[i]
        keys.push_back(key)
        i = n - 1
        while i >= 0:
            banned = (word[i - 1] ^ 1) if i > 0 else -1
            c = word[i] + 1
            if c == banned:
                c += 1
            if c < two_k:
                word[i] = c
                break
            i -= 1
        if i < 0:
            return keys
        for j in range(i + 1, n):
            if word[j - 1] != 1:
                word[j] = 0
            else:
                word[j] = 1


def sphere_keys(int two_k, int n) -> list:
    """Keys of all reduced words of length n, in lexicographic order."""
    if n > _capacity(two_k):
        raise ValueError("word length exceeds native key capacity")
    cdef vector[uint64_t] keys = _sphere_keys(two_k, n)
    cdef size_t i
    out = []
    for i in range(keys.size()):
        out.append(keys[i])
    return out


cdef void _flatten(int two_k, object keys, vector[int]& flat, vector[int]& offs) except *:
    # decoded words laid out back to back; offs has one extra end mark
    cdef uint64_t k
    cdef vector[int] letters
    cdef size_t i
    offs.push_back(0)
    for key in keys:
        k = <uint64_t> key
        letters = _decode(two_k, k)
        for i in range(letters.size()):
            flat.push_back(letters[i])
        offs.push_back(<int> flat.size())


def prod_len_hist(int two_k, akeys, bkeys) -> list:
    """Histogram of |a*b| over all ordered pairs (a, b) in A x B."""
    if not akeys or not bkeys:
        return []
    cdef vector[uint64_t] avec
    for key in akeys:
        avec.push_back(<uint64_t> key)
    cdef vector[int] flat
    cdef vector[int] offs
    _flatten(two_k, bkeys, flat, offs)
    cdef int amax = 0
    cdef int bmax = 0
    cdef size_t ai
    cdef int la
    cdef vector[int] alens
    for ai in range(avec.size()):
        la = _len(two_k, avec[ai])
        alens.push_back(la)
        if la > amax:
            amax = la
    cdef size_t bi
    cdef int nb
    for bi in range(offs.size() - 1):
        nb = offs[bi + 1] - offs[bi]
        if nb > bmax:
            bmax = nb
    cdef vector[int64_t] hist
    hist.resize(amax + bmax + 1)
    cdef uint64_t k
    cdef int i, start
    with nogil:
        for ai in range(avec.size()):
            la = alens[ai]
            for bi in range(offs.size() - 1):
                start = offs[bi]
                nb = offs[bi + 1] - start
                k = avec[ai]
                i = 0
                while k > 1 and i < nb and <int> (k % <uint64_t> two_k) == (flat[start + i] ^ 1):
                    k //= <uint64_t> two_k
                    i += 1
                hist[la + nb - 2 * i] += 1
    out = []
    for i in range(<int> hist.size()):
        out.append(hist[i])
    return out


def convolve_sphere_set(int two_k, int n, xkeys) -> dict:
    """Counts of z = w*x over w in S_n, x in the key list (chi_n * chi_E)."""
    cdef vector[uint64_t] xvec
    cdef int xmax = 0
    cdef int lx
    for key in xkeys:
        xvec.push_back(<uint64_t> key)
        lx = _len(two_k, <uint64_t> key)
        if lx > xmax:
            xmax = lx
    if n + xmax > _capacity(two_k):
        raise ValueError("word length exceeds native key capacity")
    cdef vector[int] flat
    cdef vector[int] offs
    _flatten(two_k, xkeys, flat, offs)
    cdef vector[uint64_t] powers
    cdef int e
    powers.push_back(1)
    for e in range(xmax):
        powers.push_back(powers[e] * <uint64_t> two_k)
    cdef vector[uint64_t] ws = _sphere_keys(two_k, n)
    cdef unordered_map[uint64_t, int64_t] acc
    cdef size_t wi, xi
    cdef uint64_t k, z
    cdef int i, start, m, rem
    with nogil:
        for wi in range(ws.size()):
            for xi in range(xvec.size()):
                start = offs[xi]
                m = offs[xi + 1] - start
                k = ws[wi]
                i = 0
                while k > 1 and i < m and <int> (k % <uint64_t> two_k) == (flat[start + i] ^ 1):
                    k //= <uint64_t> two_k
                    i += 1
                rem = m - i
                z = k * powers[rem] + xvec[xi] % powers[rem]
                acc[z] += 1
    out = {}
    cdef unordered_map[uint64_t, int64_t].iterator it = acc.begin()
    while it != acc.end():
        out[deref(it).first] = deref(it).second
        inc(it)
    return out


def convolve_sphere_set_value_counts(int two_k, int n, xkeys) -> dict:
    """Histogram {count: #z} of the multiplicities of chi_n * chi_E.

    Same pair loop as convolve_sphere_set, but the products are sorted
    and run-length counted instead of hashed, and only the distribution
    of the values crosses back into Python; rearrangement-based norms
    then cost O(pairs log pairs) with a tiny constant.
    """
    cdef vector[uint64_t] xvec
    cdef int xmax = 0
    cdef int lx
    for key in xkeys:
        xvec.push_back(<uint64_t> key)
        lx = _len(two_k, <uint64_t> key)
        if lx > xmax:
            xmax = lx
    if n + xmax > _capacity(two_k):
        raise ValueError("word length exceeds native key capacity")
    cdef vector[int] flat
    cdef vector[int] offs
    _flatten(two_k, xkeys, flat, offs)
    cdef vector[uint64_t] powers
    cdef int e
    powers.push_back(1)
    for e in range(xmax):
        powers.push_back(powers[e] * <uint64_t> two_k)
    cdef vector[uint64_t] ws = _sphere_keys(two_k, n)
    cdef vector[uint64_t] zs
    cdef unordered_map[int64_t, int64_t] histo
    cdef size_t wi, xi, idx, run, total
    cdef uint64_t k, z
    cdef int i, start, m, rem
    with nogil:
        zs.reserve(ws.size() * xvec.size())
        for wi in range(ws.size()):
            for xi in range(xvec.size()):
                start = offs[xi]
                m = offs[xi + 1] - start
                k = ws[wi]
                i = 0
                while k > 1 and i < m and <int> (k % <uint64_t> two_k) == (flat[start + i] ^ 1):
                    k //= <uint64_t> two_k
                    i += 1
                rem = m - i
                z = k * powers[rem] + xvec[xi] % powers[rem]
                zs.push_back(z)
        sort(zs.begin(), zs.end())
        total = zs.size()
        idx = 0
        while idx < total:
            run = 1
            while idx + run < total and zs[idx + run] == zs[idx]:
                run += 1
            histo[<int64_t> run] += 1
            idx += run
    out = {}
    cdef unordered_map[int64_t, int64_t].iterator ht = histo.begin()
    while ht != histo.end():
        out[deref(ht).first] = deref(ht).second
        inc(ht)
    return out


def sphere_len_hists(int two_k, int n, xkeys) -> list:
    """For each x: histogram of |w*x| over w in S_n (truncation column data)."""
    cdef vector[uint64_t] ws = _sphere_keys(two_k, n)
    cdef vector[int] flat
    cdef vector[int] offs
    _flatten(two_k, xkeys, flat, offs)
    cdef vector[int64_t] hist
    cdef size_t wi
    cdef size_t xi
    cdef uint64_t k
    cdef int i, start, m
    out = []
    for xi in range(offs.size() - 1):
        start = offs[xi]
        m = offs[xi + 1] - start
        hist.assign(n + m + 1, 0)
        with nogil:
            for wi in range(ws.size()):
                k = ws[wi]
                i = 0
                while k > 1 and i < m and <int> (k % <uint64_t> two_k) == (flat[start + i] ^ 1):
                    k //= <uint64_t> two_k
                    i += 1
                hist[n + m - 2 * i] += 1
        row = []
        for i in range(<int> hist.size()):
            row.append(hist[i])
        out.append(row)
    return out
