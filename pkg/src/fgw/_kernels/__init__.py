"""Hot-loop kernels over integer-packed words.

A word is packed as a base-2k integer with a leading 1 sentinel: the key of
l_0 l_1 ... l_{n-1} is ((1*2k + l_0)*2k + l_1)... so the LAST letter is the
lowest digit and, for words of equal length, numeric order equals the
lexicographic enumeration order.

Two interchangeable backends implement the same call surface:

  _native  Cython/C++ extension (words must fit in 64 bits)
  pure     pure-Python twin, arbitrary lengths, used when the extension is
           missing or FGW_PURE=1 is set

``backend`` names the one selected at import.
"""

import os

from . import pure

if os.environ.get("FGW_PURE", "") not in ("", "0"):
    impl = pure
    backend = "pure"
else:
    try:
        from . import _native as impl  # type: ignore[no-redef]

        backend = "native"
    except ImportError:
        impl = pure
        backend = "pure"

mul_key = impl.mul_key
inv_key = impl.inv_key
len_key = impl.len_key
sphere_keys = impl.sphere_keys
prod_len_hist = impl.prod_len_hist
convolve_sphere_set = impl.convolve_sphere_set
convolve_sphere_set_value_counts = impl.convolve_sphere_set_value_counts
sphere_len_hists = impl.sphere_len_hists

encode_word = pure.encode_word
decode_word = pure.decode_word
