"""Built-in datasets and reference values for the reproduction harness.

Everything the ``prv reproduce`` command compares against lives in this one
versioned file: the canned input tables and, keyed by reference-table id,
the expected measure values (with standard errors and 95% intervals where
published).  Estimates are quoted to 4 decimals, so agreement is judged at
5e-5 absolute; standard errors and interval endpoints at 5e-4.

Known inconsistency: columns artificial-1b and artificial-1c of reference
tables 2(a)/2(b) cannot be reproduced from the artificial-1b/1c input tables
(no nearby input reproduces them either; see the README compatibility
notes).  The harness reports those rows as failures rather than patching
either side.  Column artificial-1a and every other reference table
reproduce to the stated tolerances.
"""

from __future__ import annotations

REFERENCE_VERSION = "1"

ESTIMATE_TOL = 5e-5
UNCERTAINTY_TOL = 5e-4
CELL_TOL = 5e-5

# Reference table 1: 3x3 probability tables with weak (1a), slightly strong
# (1b) and complete (1c) association in the first row.
ARTIFICIAL_TABLES: dict[str, tuple[tuple[float, ...], ...]] = {
    "artificial-1a": (
        (0.005, 0.125, 0.370),
        (0.030, 0.050, 0.120),
        (0.045, 0.075, 0.180),
    ),
    "artificial-1b": (
        (0.005, 0.025, 0.470),
        (0.030, 0.050, 0.120),
        (0.045, 0.075, 0.180),
    ),
    "artificial-1c": (
        (0.000, 0.000, 0.500),
        (0.030, 0.050, 0.120),
        (0.045, 0.075, 0.180),
    ),
}

# Reference table 3: students' alcohol consumption (rows: at most once/month,
# twice/month, twice/week, more often) against cannabis use (columns: never,
# once or twice, more often); n = 1054.
CANNABIS: tuple[tuple[int, ...], ...] = (
    (204, 6, 1),
    (211, 13, 5),
    (357, 44, 38),
    (92, 34, 49),
)

# Reference table 7: occupational status of father (rows) and son (columns),
# categories capitalist / new middle / working / old middle.
OCCUPATION_1975: tuple[tuple[int, ...], ...] = (  # 7(a), n = 2308
    (29, 43, 25, 35),
    (23, 159, 89, 52),
    (11, 69, 184, 44),
    (84, 323, 525, 613),
)

OCCUPATION_1985: tuple[tuple[int, ...], ...] = (  # 7(b), n = 1994
    (46, 59, 34, 42),
    (20, 193, 79, 31),
    (9, 122, 202, 48),
    (47, 270, 412, 380),
)

COUNT_DATASETS: dict[str, tuple[tuple[int, ...], ...]] = {
    "cannabis": CANNABIS,
    "occupation-1975": OCCUPATION_1975,
    "occupation-1985": OCCUPATION_1985,
}

# Reference table 4: 4x4 rectangle probabilities of a standard bivariate
# normal cut at the quartiles, by correlation.
BVN_CELLS: dict[float, tuple[tuple[float, ...], ...]] = {
    0.0: (
        (0.0625, 0.0625, 0.0625, 0.0625),
        (0.0625, 0.0625, 0.0625, 0.0625),
        (0.0625, 0.0625, 0.0625, 0.0625),
        (0.0625, 0.0625, 0.0625, 0.0625),
    ),
    0.2: (
        (0.0837, 0.0668, 0.0563, 0.0432),
        (0.0668, 0.0648, 0.0621, 0.0563),
        (0.0563, 0.0621, 0.0648, 0.0668),
        (0.0432, 0.0563, 0.0668, 0.0837),
    ),
    0.4: (
        (0.1072, 0.0692, 0.0477, 0.0258),
        (0.0692, 0.0698, 0.0632, 0.0477),
        (0.0477, 0.0632, 0.0698, 0.0692),
        (0.0258, 0.0477, 0.0692, 0.1072),
    ),
    0.6: (
        (0.1345, 0.0691, 0.0353, 0.0111),
        (0.0691, 0.0797, 0.0659, 0.0353),
        (0.0353, 0.0659, 0.0797, 0.0691),
        (0.0111, 0.0353, 0.0691, 0.1345),
    ),
    0.8: (
        (0.1691, 0.0629, 0.0164, 0.0016),
        (0.0629, 0.1027, 0.0680, 0.0164),
        (0.0164, 0.0680, 0.1027, 0.0629),
        (0.0016, 0.0164, 0.0629, 0.1691),
    ),
    1.0: (
        (0.2500, 0.0000, 0.0000, 0.0000),
        (0.0000, 0.2500, 0.0000, 0.0000),
        (0.0000, 0.0000, 0.2500, 0.0000),
        (0.0000, 0.0000, 0.0000, 0.2500),
    ),
}

# Measure tables.  Rows are (param, input, estimate) or, where uncertainty
# was published, (param, input, estimate, se, (ci_lo, ci_hi)).  Inputs name
# either a built-in table ("artificial-1a", "cannabis", ...) or a
# discretized bivariate normal ("bvn:0.4").
MEASURE_TABLES: dict[str, dict] = {
    # Reference table 2(a): arithmetic measure, power family, artificial data.
    "2a": {
        "kind": "phi_f",
        "family": "power",
        "rows": (
            (0.0, "artificial-1a", 0.0495),
            (0.0, "artificial-1b", 0.1285),
            (0.0, "artificial-1c", 0.2628),
            (0.5, "artificial-1a", 0.0302),
            (0.5, "artificial-1b", 0.1156),
            (0.5, "artificial-1c", 0.1990),
            (1.0, "artificial-1a", 0.0203),
            (1.0, "artificial-1b", 0.1105),
            (1.0, "artificial-1c", 0.1784),
        ),
    },
    # Reference table 2(b): geometric measure, power family, artificial data.
    "2b": {
        "kind": "phi_geo",
        "family": "power",
        "rows": (
            (0.0, "artificial-1a", 0.0701),
            (0.0, "artificial-1b", 0.2765),
            (0.0, "artificial-1c", 1.0000),
            (0.5, "artificial-1a", 0.0487),
            (0.5, "artificial-1b", 0.3126),
            (0.5, "artificial-1c", 1.0000),
            (1.0, "artificial-1a", 0.0354),
            (1.0, "artificial-1b", 0.3221),
            (1.0, "artificial-1c", 1.0000),
        ),
    },
    # Reference table 5(a): arithmetic measure on the bivariate-normal tables.
    "5a": {
        "kind": "phi_f",
        "family": "power",
        "rows": (
            (0.0, "bvn:0.0", 0.0000),
            (0.0, "bvn:0.2", 0.0109),
            (0.0, "bvn:0.4", 0.0461),
            (0.0, "bvn:0.6", 0.1159),
            (0.0, "bvn:0.8", 0.2541),
            (0.0, "bvn:1.0", 1.0000),
            (0.5, "bvn:0.0", 0.0000),
            (0.5, "bvn:0.2", 0.0113),
            (0.5, "bvn:0.4", 0.0471),
            (0.5, "bvn:0.6", 0.1161),
            (0.5, "bvn:0.8", 0.2479),
            (0.5, "bvn:1.0", 1.0000),
            (1.0, "bvn:0.0", 0.0000),
            (1.0, "bvn:0.2", 0.0100),
            (1.0, "bvn:0.4", 0.0419),
            (1.0, "bvn:0.6", 0.1035),
            (1.0, "bvn:0.8", 0.2236),
            (1.0, "bvn:1.0", 1.0000),
        ),
    },
    # Reference table 5(b): geometric measure on the bivariate-normal tables.
    "5b": {
        "kind": "phi_geo",
        "family": "power",
        "rows": (
            (0.0, "bvn:0.0", 0.0000),
            (0.0, "bvn:0.2", 0.0109),
            (0.0, "bvn:0.4", 0.0469),
            (0.0, "bvn:0.6", 0.1203),
            (0.0, "bvn:0.8", 0.2699),
            (0.0, "bvn:1.0", 1.0000),
            (0.5, "bvn:0.0", 0.0000),
            (0.5, "bvn:0.2", 0.0113),
            (0.5, "bvn:0.4", 0.0479),
            (0.5, "bvn:0.6", 0.1205),
            (0.5, "bvn:0.8", 0.2634),
            (0.5, "bvn:1.0", 1.0000),
            (1.0, "bvn:0.0", 0.0000),
            (1.0, "bvn:0.2", 0.0100),
            (1.0, "bvn:0.4", 0.0425),
            (1.0, "bvn:0.6", 0.1071),
            (1.0, "bvn:0.8", 0.2369),
            (1.0, "bvn:1.0", 1.0000),
        ),
    },
    # Reference table 6(a): arithmetic measure on the cannabis survey.
    "6a": {
        "kind": "phi_f",
        "family": "power",
        "rows": (
            (0.0, "cannabis", 0.1215, 0.0175, (0.0872, 0.1557)),
            (0.5, "cannabis", 0.1090, 0.0172, (0.0752, 0.1428)),
            (1.0, "cannabis", 0.1034, 0.0174, (0.0693, 0.1376)),
        ),
    },
    # Reference table 6(b): geometric measure on the cannabis survey.
    "6b": {
        "kind": "phi_geo",
        "family": "power",
        "rows": (
            (0.0, "cannabis", 0.2601, 0.0439, (0.1741, 0.3461)),
            (0.5, "cannabis", 0.2922, 0.0488, (0.1965, 0.3879)),
            (1.0, "cannabis", 0.2992, 0.0502, (0.2007, 0.3976)),
        ),
    },
    # Reference table 8: arithmetic measure, omega family, occupational data.
    "8a": {
        "kind": "phi_f",
        "family": "omega",
        "rows": (
            (0.0, "occupation-1975", 0.0480, 0.0061, (0.0361, 0.0600)),
            (0.5, "occupation-1975", 0.0547, 0.0067, (0.0416, 0.0678)),
            (0.9, "occupation-1975", 0.0401, 0.0054, (0.0294, 0.0507)),
        ),
    },
    "8b": {
        "kind": "phi_f",
        "family": "omega",
        "rows": (
            (0.0, "occupation-1985", 0.0598, 0.0071, (0.0459, 0.0736)),
            (0.5, "occupation-1985", 0.0709, 0.0079, (0.0553, 0.0864)),
            (0.9, "occupation-1985", 0.0665, 0.0081, (0.0506, 0.0823)),
        ),
    },
    # Reference table 9: geometric measure, omega family, occupational data.
    "9a": {
        "kind": "phi_geo",
        "family": "omega",
        "rows": (
            (0.0, "occupation-1975", 0.0499, 0.0066, (0.0371, 0.0628)),
            (0.5, "occupation-1975", 0.0571, 0.0072, (0.0431, 0.0712)),
            (0.9, "occupation-1975", 0.0416, 0.0057, (0.0304, 0.0528)),
        ),
    },
    "9b": {
        "kind": "phi_geo",
        "family": "omega",
        "rows": (
            (0.0, "occupation-1985", 0.0630, 0.0077, (0.0478, 0.0782)),
            (0.5, "occupation-1985", 0.0752, 0.0086, (0.0583, 0.0922)),
            (0.9, "occupation-1985", 0.0695, 0.0084, (0.0530, 0.0860)),
        ),
    },
}

#: Parts regenerated by ``prv reproduce --table N``.
TABLE_PARTS: dict[str, tuple[str, ...]] = {
    "2": ("2a", "2b"),
    "5": ("5a", "5b"),
    "6": ("6a", "6b"),
    "8": ("8a", "8b"),
    "9": ("9a", "9b"),
}
