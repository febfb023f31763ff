"""Pure-Python kernel twin; reference semantics for the native extension."""

from __future__ import annotations


def encode_word(two_k: int, letters) -> int:
    key = 1
    for c in letters:
        key = key * two_k + c
    return key


def decode_word(two_k: int, key: int) -> tuple[int, ...]:
    out = []
    while key > 1:
        key, c = divmod(key, two_k)
        out.append(c)
    out.reverse()
    return tuple(out)


def len_key(two_k: int, key: int) -> int:
    n = 0
    while key > 1:
        key //= two_k
        n += 1
    return n


def inv_key(two_k: int, key: int) -> int:
    # peeling from the tail and re-appending reverses the word for free
    out = 1
    while key > 1:
        key, c = divmod(key, two_k)
        out = out * two_k + (c ^ 1)
    return out


def mul_key(two_k: int, ka: int, kb: int) -> int:
    b = decode_word(two_k, kb)
    i = 0
    n = len(b)
    while ka > 1 and i < n and ka % two_k == b[i] ^ 1:
        ka //= two_k
        i += 1
    out = ka
    for c in b[i:]:
        out = out * two_k + c
    return out


def sphere_keys(two_k: int, n: int) -> list[int]:
    """Keys of all reduced words of length n, in lexicographic order."""
    if n == 0:
        return [1]
    keys: list[int] = []
    word = [0] * n
    for i in range(1, n):
        word[i] = 0 if word[i - 1] != 1 else 1
    key = encode_word(two_k, word)
    while True:
        keys.append(key)
        i = n - 1
        while i >= 0:
            banned = word[i - 1] ^ 1 if i > 0 else -1
            c = word[i] + 1
            if c == banned:
                c += 1
            if c < two_k:
                word[i] = c
                break
            i -= 1
        else:
            return keys
        for j in range(i + 1, n):
            word[j] = 0 if word[j - 1] != 1 else 1
        key = encode_word(two_k, word)


def prod_len_hist(two_k: int, akeys, bkeys) -> list[int]:
    """Histogram of |a*b| over all ordered pairs (a, b) in A x B."""
    if not akeys or not bkeys:
        return []
    bwords = [decode_word(two_k, kb) for kb in bkeys]
    alens = [len_key(two_k, ka) for ka in akeys]
    hist = [0] * (max(alens) + max(len(b) for b in bwords) + 1)
    for ka, la in zip(akeys, alens):
        for b in bwords:
            k = ka
            i = 0
            nb = len(b)
            while k > 1 and i < nb and k % two_k == b[i] ^ 1:
                k //= two_k
                i += 1
            hist[la + nb - 2 * i] += 1
    return hist


def convolve_sphere_set(two_k: int, n: int, xkeys) -> dict[int, int]:
    """Counts of z = w*x over w in S_n, x in the key list (chi_n * chi_E)."""
    out: dict[int, int] = {}
    xs = [(kx, decode_word(two_k, kx)) for kx in xkeys]
    maxlen = max((len(x) for _, x in xs), default=0)
    powers = [two_k**i for i in range(maxlen + 1)]
    for kw in sphere_keys(two_k, n):
        for kx, xl in xs:
            k = kw
            i = 0
            m = len(xl)
            while k > 1 and i < m and k % two_k == xl[i] ^ 1:
                k //= two_k
                i += 1
            rem = m - i
            z = k * powers[rem] + kx % powers[rem]
            out[z] = out.get(z, 0) + 1
    return out


def convolve_sphere_set_value_counts(two_k: int, n: int, xkeys) -> dict[int, int]:
    """Histogram {count: #z} of the multiplicities of chi_n * chi_E."""
    histo: dict[int, int] = {}
    for c in convolve_sphere_set(two_k, n, xkeys).values():
        histo[c] = histo.get(c, 0) + 1
    return histo


def sphere_len_hists(two_k: int, n: int, xkeys) -> list[list[int]]:
    """For each x: histogram of |w*x| over w in S_n (truncation column data)."""
    ws = sphere_keys(two_k, n)
    out = []
    for kx in xkeys:
        xl = decode_word(two_k, kx)
        m = len(xl)
        hist = [0] * (n + m + 1)
        for kw in ws:
            k = kw
            i = 0
            while k > 1 and i < m and k % two_k == xl[i] ^ 1:
                k //= two_k
                i += 1
            hist[n + m - 2 * i] += 1
        out.append(hist)
    return out
