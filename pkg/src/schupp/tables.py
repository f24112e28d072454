"""Published reference ground-state energies used for verification.

These values are compiled in verbatim and must never be regenerated from
this package's own output.
"""

from __future__ import annotations

from .lattice import (Crossing, LatticeSpec, chain, crossed_ladder, pyro_a,
                      pyro_b, rectangle, square_ladder)

# open chains, coupling 1, N sites
CHAIN_ENERGIES = {
    2: -0.750000000000,
    3: -1.000000000000,
    4: -1.616025403784,
    5: -1.927886253318,
    6: -2.493577133888,
    7: -2.836239680687,
    8: -3.374932598688,
    9: -3.736321706379,
    10: -4.258035207283,
    11: -4.632093302360,
    12: -5.142090632841,
    13: -5.525322097084,
    14: -6.026724661862,
    15: -6.416920491794,
    16: -6.911737145575,
    17: -7.307408708036,
    18: -7.797011068537,
    19: -8.197105741633,
    20: -8.682473334399,
    21: -9.086218400935,
    22: -9.568075875984,
    23: -9.974886805423,
    24: -10.453785760410,
    25: -10.863209352260,
    26: -11.339579652755,
    27: -11.751257222131,
    28: -12.225440548603,
}

# quasi-2d systems keyed by (rows, cols); columns: square grid, pyrochlore
# checkerboard starting crossed (A) / plain (B), and fully crossed X lattice
# with diagonal coupling 1/2
QUASI2D_ENERGIES = {
    (2, 2): (-2.0000000000000, -1.5000000000000, -2.0000000000000, -1.7500000000000),
    (2, 3): (-3.1293852415718, -2.7500000000000, -2.7500000000000, -2.6778862533180),
    (2, 4): (-4.2930664566570, -3.5000000000000, -4.0277505942154, -3.6418298745657),
    (2, 5): (-5.4467120643352, -4.7777505942154, -4.7777505942154, -4.5873084880937),
    (2, 6): (-6.6034724753869, -5.5277505942154, -6.0607411404916, -5.5431961748705),
    (2, 7): (-7.7593260611500, -6.8107411404916, -6.8107411404916, -6.4933181096298),
    (2, 8): (-8.9154711235558, -7.5607411404916, -8.0949932311853, -7.4467788894730),
    (2, 9): (-10.0715341613484, -8.8449932311853, -8.8449932311853, -8.3983424061390),
    (2, 10): (-11.2276251173666, -9.5949932311853, -10.1295778777187, -9.3510128680377),
    (2, 11): (-12.3837088687482, -10.8795778777187, -10.8795778777186, -10.3030475515486),
    (2, 12): (-13.5397954074066, -11.6295778777187, -12.1642537019725, -11.2554538123736),
    (2, 13): (-14.6958813681522, -12.9142537019725, -12.9142537019725, -12.2076455365328),
    (2, 14): (-15.8519676317127, -13.6642537019726, -14.1989549790545, -13.1599626306679),
    (3, 3): (-4.7493272585528, -4.0087848535303, -4.0087848535303, -3.9593399973975),
    (3, 4): (-6.6916801935149, -5.6617068232824, -5.6617068232824, -5.5345034217058),
    (3, 5): (-8.3876285183968, -6.9910226671666, -6.9910226671666, -6.8685484091210),
    (3, 6): (-10.2835182238578, -8.5954218204916, -8.5954218204916, -8.4037660947387),
    (3, 7): (-12.0072308867337, -9.9647656528603, -9.9647656528602, -9.7629674917248),
    (3, 8): (-13.8813610992452, -11.5380986367773, -11.5380986367773, -11.2765046416748),
    (4, 4): (-9.1892070651929, -7.3280745721674, -8.1022525727023, -7.5055569500810),
    (4, 5): (-11.6515708351580, -9.7410214922860, -9.7410214922860, -9.4307787759889),
    (4, 6): (-14.1291468644466, -11.3817745234209, -12.1857227796133, -11.3850974919405),
    (5, 5): (-14.6961464371187, -12.0391686609399, -12.0391686609399, -11.7667640193786),
}

_VARIANTS = ("square", "pyro_a", "pyro_b", "x")


def quasi2d_spec(rows: int, cols: int, variant: str) -> LatticeSpec:
    """Lattice spec for one reference-table entry."""
    if rows == 2:
        maker = {"square": square_ladder, "pyro_a": pyro_a,
                 "pyro_b": pyro_b, "x": crossed_ladder}[variant]
        return maker(cols)
    crossing = {"square": Crossing.NONE, "pyro_a": Crossing.CHECKER_A,
                "pyro_b": Crossing.CHECKER_B, "x": Crossing.ALL}[variant]
    return rectangle(cols, rows, crossing)


def reference_entries(max_sites: int):
    """All (spec, reference energy, label) entries within a site budget."""
    out = []
    for n, e in sorted(CHAIN_ENERGIES.items()):
        if n <= max_sites:
            out.append((chain(n), e, f"chain N={n}"))
    for (rows, cols), energies in sorted(QUASI2D_ENERGIES.items()):
        if rows * cols > max_sites:
            continue
        for variant, e in zip(_VARIANTS, energies):
            out.append((quasi2d_spec(rows, cols, variant), e,
                        f"{variant} {rows}x{cols}"))
    return out
