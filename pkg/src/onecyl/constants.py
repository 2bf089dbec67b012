"""Reference values for low-dimensional quadratic strata.

These numbers are published reference data.  They are used only in
comparison columns and in tests; nothing in the library computes from them.

Each row: stratum, component label (``None`` when the row is the whole
stratum), coefficient ``r`` of the one-cylinder contribution ``r*zeta(d)``,
published cylinder-count frequencies, and the exact volume as
``(rational, power of pi)``.
"""
from __future__ import annotations

from collections import namedtuple
from fractions import Fraction as F

Row = namedtuple("Row", "stratum component r frequencies volume")

TABLE = {
    4: [
        Row("Q(1,-1^5)", None, F(40), (0.4382, 0.5618), (F(1), 4)),
        Row("Q(1^2,-1^2)", None, F(50, 3), (0.5724, 0.4276), (F(1, 3), 4)),
        Row("Q(3,-1^3)", None, F(30), (0.6016, 0.3984), (F(5, 9), 4)),
        # published with pi^2; the stated frequencies agree with that power
        Row("Q(2^2)", None, F(17, 4), (0.7065, 0.2130, 0.0805), (F(2, 3), 2)),
        Row("Q(5,-1)", None, F(12), (0.6488, 0.3512), (F(28, 135), 4)),
    ],
    5: [
        Row("Q(2,-1^6)", None, F(60), (0.2472, 0.6740, 0.0789), (F(8, 3), 4)),
        Row("Q(2,1,-1^3)", None, F(45), (0.4919, 0.4472, 0.0610), (F(1), 4)),
        Row("Q(4,-1^4)", None, F(84), (0.4309, 0.5163, 0.0528), (F(2), 4)),
        Row("Q(2,1^2)", None, F(11, 2), (0.4398, 0.4667, 0.0935), (F(2, 15), 4)),
        Row("Q(4,1,-1)", None, F(68, 3), (0.4772, 0.4854, 0.0374), (F(8, 15), 4)),
        Row("Q(3,2,-1)", None, F(115, 6), (0.5528, 0.3813, 0.0659), (F(10, 27), 4)),
        Row("Q(6,-1^2)", "hyp", F(65, 12), (0.3057, 0.6374, 0.0569), (F(8, 45), 4)),
        Row("Q(6,-1^2)", "non-hyp", F(181, 3), (0.5366, 0.4008, 0.0626), (F(32, 27), 4)),
        Row("Q(8)", None, F(56, 3), (0.5211, 0.4024, 0.0764), (F(10, 27), 4)),
    ],
    6: [
        Row("Q(1^2,-1^6)", None, F(140), (0.2943, 0.4236, 0.2821), (F(1, 2), 6)),
        Row("Q(3,-1^7)", None, F(84), (0.1106, 0.6187, 0.2707), (F(3, 4), 6)),
        Row("Q(1^3,-1^3)", None, F(77), (0.4366, 0.4000, 0.1634), (F(11, 60), 6)),
        Row("Q(3,1,-1^4)", None, F(126), (0.4000, 0.4520, 0.1480), (F(1, 3), 6)),
        Row("Q(2^2,-1^4)", None, F(110), (0.364, 0.511, 0.108, 0.016), (F(136, 45), 4)),
        Row("Q(5,-1^5)", None, F(210), (0.3276, 0.5301, 0.1423), (F(7, 10), 6)),
        Row("Q(1^4)", None, F(49, 3), (0.2512, 0.5577, 0.1911), (F(1, 15), 6)),
        Row("Q(3,1^2,-1)", None, F(119, 3), (0.3593, 0.5081, 0.1325), (F(1, 9), 6)),
        Row("Q(2^2,1,-1)", None, F(94, 3), (0.391, 0.503, 0.096, 0.0098), (F(4, 5), 4)),
        Row("Q(5,1,-1^2)", None, F(189, 2), (0.4252, 0.4569, 0.1179), (F(7, 30), 6)),
        Row("Q(4,2,-1^2)", None, F(317, 4), (0.450, 0.449, 0.089, 0.012), (F(28, 15), 4)),
        Row("Q(3^2,-1^2)", "hyp", F(161, 30), (0.1724, 0.6520, 0.1756), (F(1, 30), 6)),
        Row("Q(3^2,-1^2)", "non-hyp", F(1106, 15), (0.4894, 0.3951, 0.1154), (F(22, 135), 6)),
        Row("Q(7,-1^3)", None, F(441, 2), (0.4179, 0.4626, 0.1195), (F(27, 50), 6)),
        Row("Q(7,1)", None, F(37), (0.3724, 0.5171, 0.1106), (F(18, 175), 6)),
        Row("Q(6,2)", "hyp", F(65, 48), (0.237, 0.608, 0.137, 0.018), (F(8, 135), 4)),
        Row("Q(6,2)", "non-hyp", F(389, 12), (0.473, 0.380, 0.112, 0.035), (F(96, 135), 4)),
        Row("Q(5,3)", None, F(77, 3), (0.488, 0.383, 0.129), (F(14, 243), 6)),
        Row("Q(4^2)", None, F(92, 3), (0.388, 0.481, 0.109, 0.022), (F(4, 5), 4)),
        # the volume is published for the whole stratum only
        Row("Q(9,-1)", "reg", F(385, 3), (0.4569, 0.4195, 0.1236), None),
        Row("Q(9,-1)", "irr", F(55, 3), (0.3024, 0.5740, 0.1236), None),
    ],
}

#: whole-stratum volumes where the table lists components separately
WHOLE_STRATUM_VOLUME = {
    "Q(9,-1)": (F(15224, 42525), 6),
}

#: volumes of two Abelian strata used in checks
ABELIAN_VOLUMES = {
    "H(2)": (F(1, 120), 4),
    "H(3,1)": (F(16, 42525), 6),
}


def stratum_rows(dim=None):
    """Rows merged per stratum: ``{stratum: (r, volume or None)}``."""
    out = {}
    dims = [dim] if dim is not None else sorted(TABLE)
    for d in dims:
        for row in TABLE[d]:
            r, vol = out.get(row.stratum, (F(0), None))
            r += row.r
            if row.volume is not None:
                if vol is None:
                    vol = row.volume
                else:
                    if vol[1] != row.volume[1]:
                        raise ValueError("inconsistent pi powers")
                    vol = (vol[0] + row.volume[0], vol[1])
            out[row.stratum] = (r, vol)
    for s, v in WHOLE_STRATUM_VOLUME.items():
        if s in out:
            out[s] = (out[s][0], v)
    return out
