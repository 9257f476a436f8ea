"""Numpy implementation of the family-classification kernel.

Used when the compiled extension is unavailable (or explicitly disabled
with ``UFLAB_FORCE_FALLBACK=1``).  Vectorizes over the family axis: all
2^(2^n) coalition families are classified in one pass.
"""

import numpy as np

BACKEND = "numpy-fallback"

FLAG_C1 = 1
FLAG_C2 = 2
FLAG_C3 = 4
FLAG_U1 = 8
FLAG_U2 = 16
FLAG_PROPER = 32


def classify_families(n: int) -> np.ndarray:
    """Classify every coalition family on an n-member assembly.

    Family number ``f`` encodes the family whose coalitions are the set
    bits of ``f`` (coalition K is itself a bitmask of members).  Returns a
    uint8 array of length 2^(2^n); entry ``f`` is the OR of the FLAG_*
    bits that family ``f`` satisfies.  FLAG_PROPER means "nonempty family
    of nonempty coalitions", the side condition of the ultrafilter
    definition alongside U1 and U2.
    """
    if not 1 <= n <= 4:
        raise ValueError("classify_families supports 1 <= n <= 4")
    m = 1 << n
    full = m - 1
    count = 1 << m

    fams = np.arange(count, dtype=np.uint32)
    member = ((fams[:, None] >> np.arange(m, dtype=np.uint32)) & 1).astype(bool)

    c1 = np.ones(count, dtype=bool)
    for k in range(m):
        c1 &= member[:, k] != member[:, full ^ k]

    # upward closure is equivalent to closure under adding one member
    c2 = np.ones(count, dtype=bool)
    for k in range(m):
        for j in range(n):
            if not k >> j & 1:
                c2 &= ~member[:, k] | member[:, k | (1 << j)]

    c3 = np.ones(count, dtype=bool)
    u1 = np.ones(count, dtype=bool)
    u2 = np.ones(count, dtype=bool)
    for k in range(m):
        for l in range(k, m):
            mk = member[:, k]
            ml = member[:, l]
            c3 &= ~(mk & ml) | member[:, k & l]
            u1 &= member[:, k & l] == (mk & ml)
            u2 &= member[:, k | l] == (mk | ml)

    proper = (fams != 0) & ~member[:, 0]

    flags = (
        c1 * FLAG_C1
        | c2 * FLAG_C2
        | c3 * FLAG_C3
        | u1 * FLAG_U1
        | u2 * FLAG_U2
        | proper * FLAG_PROPER
    )
    return flags.astype(np.uint8)
