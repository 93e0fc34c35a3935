"""High-precision reference constants for the exponent experiments.

These are the thresholds the asymptotic theory attaches to the sequence of
minimal points.  They are reported alongside experiment output for
comparison against the monitored ratio traces; nothing in the exact suites
depends on them.
"""

from mpmath import mp


def threshold_constants(dps: int = 50) -> dict[str, str]:
    with mp.workdps(dps):
        vals = {
            # proved upper bound for the uniform exponent
            "mu": 2 * (9 + mp.sqrt(11)) / 35,
            # conjectural optimum the method cannot pass
            "lambda0": (1 + 3 * mp.sqrt(5)) / 11,
            # threshold for the non-vanishing of the pair discriminant
            "threshold_sqrt13": (5 - mp.sqrt(13)) / 2,
            # first bound, from non-vanishing of the cubic alone
            "threshold_sqrt3": mp.sqrt(3) - 1,
            # bound when the pair discriminant never dies
            "five_sevenths": mp.mpf(5) / 7,
            # growth ratio attached to lambda0
            "beta0": (5 + 3 * mp.sqrt(5)) / 2,
            # growth ratio attached to mu
            "nu": 2 + mp.sqrt(11),
        }
        return {k: mp.nstr(v, dps - 2) for k, v in sorted(vals.items())}
