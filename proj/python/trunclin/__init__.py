"""Annihilator ideals of linearly recurrent vector sequences over F_p[x]/(x^d).

Thin wrapper around the compiled ``_core`` extension.  Elements of the
coefficient ring are lists of integer coefficients of ``x^0 .. x^{d-1}``
(short lists are zero padded), a sequence term is a list of ``n`` elements,
and an annihilating polynomial is a list of elements where index ``j`` holds
the coefficient of ``y^j``.
"""

from __future__ import annotations

import json
from typing import Any

try:  # installed wheel layout
    from ._core import (
        __version__,
        algorithms,
        annihilator,
        cancels,
        compare_json,
        determinant,
        generate,
        minimal_ideal,
        oracle_staircase,
    )
except ImportError:  # in-tree build: _core sits next to the build directory
    from _core import (
        __version__,
        algorithms,
        annihilator,
        cancels,
        compare_json,
        determinant,
        generate,
        minimal_ideal,
        oracle_staircase,
    )

__all__ = [
    "__version__",
    "algorithms",
    "annihilator",
    "cancels",
    "compare",
    "compare_json",
    "determinant",
    "generate",
    "minimal_ideal",
    "oracle_staircase",
]


def compare(p: int, d: int, terms: list, **kwargs: Any) -> dict:
    """Run all four algorithms on one sequence and return the parsed report.

    The report carries one entry per algorithm (staircase, basis size,
    timings) plus an ``agree`` flag for pairwise staircase agreement.
    """
    return json.loads(compare_json(p, d, terms, **kwargs))
