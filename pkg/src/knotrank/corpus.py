"""Built-in diagram corpus.

Small table knots in standard PD presentations, the Hopf link and unlink,
four 18/19-crossing ribbon knots, and a 24-crossing symmetric union.  The
chirality of each table knot is fixed so that the computed invariants
match the published tables (see the regression tests).
"""

from __future__ import annotations

from .diagram import Diagram, parse_pd

_CODES: dict[str, str] = {
    "unknot": "U",
    "unlink2": "UU",
    "hopf": "[[1,4,2,3],[3,2,4,1]]",
    "3_1": "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]",
    "4_1": "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]",
    "5_1": "[[1,6,2,7],[3,8,4,9],[5,10,6,1],[7,2,8,3],[9,4,10,5]]",
    "6_1": "[[1,4,2,5],[7,10,8,11],[3,9,4,8],[9,3,10,2],[5,12,6,1],[11,6,12,7]]",
    "6_2": "[[1,4,2,5],[5,10,6,11],[3,9,4,8],[9,3,10,2],[7,12,8,1],[11,6,12,7]]",
    "18nh_00159590": (
        "[[16,2,17,1],[2,7,3,8],[10,3,11,4],[23,4,24,5],"
        "[5,24,6,25],[6,11,7,12],[27,8,28,9],[9,28,10,29],"
        "[12,32,13,31],[32,14,33,13],[14,36,15,35],[36,16,1,15],"
        "[17,21,18,20],[33,19,34,18],[19,35,20,34],[26,21,27,22],"
        "[22,29,23,30],[30,25,31,26]]"
    ),
    "18nh_00752242": (
        "[[10,2,11,1],[2,26,3,25],[3,32,4,33],[33,4,34,5],"
        "[20,5,21,6],[6,23,7,24],[7,15,8,14],[15,9,16,8],"
        "[36,10,1,9],[11,17,12,16],[17,13,18,12],[13,19,14,18],"
        "[24,19,25,20],[21,28,22,29],[29,22,30,23],[26,31,27,32],"
        "[34,27,35,28],[30,35,31,36]]"
    ),
    "19nh_000129633": (
        "[[30,2,31,1],[2,21,3,22],[3,33,4,32],[33,5,34,4],"
        "[5,29,6,28],[6,15,7,16],[16,7,17,8],[8,27,9,28],"
        "[36,9,37,10],[25,10,26,11],[11,38,12,1],[12,17,13,18],"
        "[18,13,19,14],[14,19,15,20],[29,21,30,20],[22,32,23,31],"
        "[34,24,35,23],[24,36,25,35],[37,27,38,26]]"
    ),
    "19nh_000305767": (
        "[[1,9,2,8],[11,3,12,2],[3,30,4,31],[21,5,22,4],"
        "[34,5,35,6],[6,24,7,23],[7,15,8,14],[26,10,27,9],"
        "[10,28,11,27],[12,31,13,32],[32,13,33,14],[15,36,16,37],"
        "[37,16,38,17],[17,38,18,1],[18,25,19,26],[19,29,20,28],"
        "[29,21,30,20],[22,34,23,33],[24,35,25,36]]"
    ),
    "symunion24": (
        "[[7,37,8,36],[40,34,41,33],[31,13,32,12],[8,16,9,15],"
        "[14,6,15,5],[35,7,36,6],[32,40,33,39],[26,47,27,48],"
        "[46,19,47,20],[41,24,42,25],[44,3,45,4],[25,20,26,21],"
        "[48,27,1,28],[2,43,3,44],[23,4,24,5],[38,12,39,11],"
        "[42,45,43,46],[21,28,22,29],[10,30,11,29],[37,31,38,30],"
        "[13,35,14,34],[16,10,17,9],[17,22,18,23],[18,1,19,2]]"
    ),
}

RIBBON_NAMES = ("18nh_00159590", "18nh_00752242", "19nh_000129633",
                "19nh_000305767", "symunion24")
COUNTEREXAMPLE_NAMES = RIBBON_NAMES[:4]


def load_corpus() -> dict[str, Diagram]:
    """All built-in diagrams, validated, keyed by name."""
    return {name: parse_pd(code, name=name) for name, code in _CODES.items()}


def corpus_knots() -> dict[str, Diagram]:
    """The corpus entries with exactly one component."""
    return {k: d for k, d in load_corpus().items() if d.is_knot}
