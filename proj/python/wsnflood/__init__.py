# Copyright 2026 The wsnflood Authors
# SPDX-License-Identifier: Apache-2.0
"""Energy wastage of flooding in tree-shaped sensor networks.

Exact quantities come back as ``fractions.Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence, Union

from . import _core
from ._core import (
    DegeneratePosition,
    DisconnectedGraph,
    DomainError,
    InvalidSpec,
    OutOfRange,
    ParseError,
)

__all__ = [
    "formula",
    "tree",
    "level_widths",
    "simulate",
    "ls_query",
    "tables",
    "fixtures",
    "verify",
    "series",
    "accept",
    "InvalidSpec",
    "DomainError",
    "ParseError",
    "DisconnectedGraph",
    "OutOfRange",
    "DegeneratePosition",
]

_EXACT_KEYS = {
    "b_t", "b_r", "t_x", "r_x", "n_total", "e_total", "N", "E",
    "transmitters", "receivers", "mean_b_t", "mean_b_r", "variance_b_t", "variance_b_r",
    "expected", "computed", "difference", "energy_mj", "ls_involved", "ls_energy",
    "transmitted", "received", "analytic", "structural",
    "n_printed", "n_computed", "e_printed", "e_computed",
}


def _exact(text: str) -> Fraction:
    return Fraction(text)


def _convert(value: Any, key: str = "") -> Any:
    if isinstance(value, dict):
        return {k: _convert(v, k) for k, v in value.items() if k != "decimal"}
    if isinstance(value, list):
        return [_convert(v, key) for v in value]
    if isinstance(value, str) and key in _EXACT_KEYS:
        return _exact(value)
    return value


def _load(text: str) -> Any:
    return _convert(json.loads(text))


def _mode(mode: Union[str, Fraction, float, int, None]) -> str:
    if mode is None or mode == "pure":
        return "pure"
    if isinstance(mode, str):
        return mode
    return f"controlled:{Fraction(mode)}"


def formula(family: str, *, d: int = 0, i: int = 0, s: int = 0, q: int = 2, n: int = 0, k: int = 0,
            mode: Union[str, Fraction, None] = "pure", et: int = 100, er: int = 5) -> dict:
    """Closed-form wastage report. ``mode`` is "pure", "controlled:<p>" or a probability."""
    return _load(_core.formula(family, d, i, s, q, n, k, _mode(mode), str(et), str(er)))


def tree(spec: str) -> dict:
    """Breadth-first expansion of a family spec such as "nested:2,5"."""
    return json.loads(_core.tree(spec))


def level_widths(spec: str) -> list:
    return [int(w) for w in _core.level_widths(spec)]


def simulate(spec: str, i: int, mode: Union[str, Fraction, None] = "pure", *, trials: int = 0, seed: int = 0,
             per_node: bool = False, et: int = 100, er: int = 5) -> dict:
    """Floods the tree from depth ``i``. Controlled modes give exact expectations unless
    ``trials`` is positive, in which case they are Monte Carlo estimates."""
    return _load(_core.simulate(spec, i, _mode(mode), trials, seed, per_node, str(et), str(er)))


def ls_query(field: Union[str, Mapping[str, Any]], query: str, mode: str = "ls", *, seed: int = 0,
             et: int = 100, er: int = 5) -> dict:
    """Routes query replies over a placed field (a JSON string or an equivalent dict)."""
    text = field if isinstance(field, str) else json.dumps(field)
    return _load(_core.ls_query(text, query, mode if mode in ("ls", "pure") else _mode(mode), seed,
                                str(et), str(er)))


def tables(table: int) -> tuple:
    """(reproduction, exit_code) for printed table 1 or 2."""
    text, code = _core.tables(table)
    return _load(text), code


def fixtures() -> list:
    return json.loads(_core.fixtures())


def verify(scope: str = "all", *, d_max: int = 10,
           p_grid: Iterable[Union[Fraction, int, str]] = (0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1),
           q_values: Sequence[int] = (2, 3, 4, 5), max_nodes: int = 1_000_000) -> tuple:
    """(discrepancy report, exit_code)."""
    text, code = _core.verify(scope, d_max, [str(Fraction(p)) for p in p_grid], list(q_values), max_nodes)
    return _load(text), code


def series(family: str, depths: Iterable[int], *, i: int = 2, s: int = 0, q: int = 2,
           mode: Union[str, Fraction, None] = "pure", include_ls: bool = False, et: int = 100, er: int = 5) -> list:
    return _load(_core.series(family, i, s, q, list(depths), _mode(mode), include_ls, str(et), str(er)))


def accept(sender: tuple, receiver: tuple, sectors: int) -> bool:
    """Acceptance rule on (level, sector) pairs."""
    return _core.accept(sender[0], sender[1], receiver[0], receiver[1], sectors)
