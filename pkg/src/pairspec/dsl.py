"""Structure-definition file format: JSON in, canonical JSON out.

A pair file is a single object with ``name``, ``elements``, ``zero``,
``one``, ``add``, ``mul``, ``tangible``, ``a0`` and an optional ``negation``
(label permutation); hyperstructure files replace nothing but add
``hyperadd`` (a table of label arrays) and optionally ``hypernegation``.
Parsing validates shape and labels only; algebraic axioms are checked when
the structure is built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .constructions import HyperStructure, validate_hyperstructure
from .core import NegationMap, Pair, validate_negation_map, validate_pair, validate_structure
from .errors import DimensionMismatch, DslSyntaxError, DuplicateLabel, UnknownLabel


@dataclass(frozen=True)
class PairFile:
    name: str
    elements: tuple[str, ...]
    zero: str
    one: str
    add: tuple[tuple[str, ...], ...]
    mul: tuple[tuple[str, ...], ...]
    tangible: tuple[str, ...]
    a0: tuple[str, ...]
    negation: Optional[dict[str, str]] = None

    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "elements": list(self.elements),
            "zero": self.zero,
            "one": self.one,
            "add": [list(r) for r in self.add],
            "mul": [list(r) for r in self.mul],
            "tangible": list(self.tangible),
            "a0": list(self.a0),
        }
        if self.negation is not None:
            out["negation"] = dict(sorted(self.negation.items()))
        return out


@dataclass(frozen=True)
class HyperFile:
    name: str
    elements: tuple[str, ...]
    zero: str
    one: str
    mul: tuple[tuple[str, ...], ...]
    hyperadd: tuple[tuple[tuple[str, ...], ...], ...]
    tangible: tuple[str, ...]
    hypernegation: Optional[dict[str, str]] = None

    def to_json_dict(self) -> dict:
        out = {
            "name": self.name,
            "elements": list(self.elements),
            "zero": self.zero,
            "one": self.one,
            "mul": [list(r) for r in self.mul],
            "hyperadd": [[sorted(cell) for cell in row] for row in self.hyperadd],
            "tangible": list(self.tangible),
        }
        if self.hypernegation is not None:
            out["hypernegation"] = dict(sorted(self.hypernegation.items()))
        return out


def _load(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DslSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise DslSyntaxError("top-level value must be an object", 1, 1)
    return obj


def _elements(obj: dict) -> tuple[str, ...]:
    elements = obj.get("elements")
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise DimensionMismatch("'elements' must be a list of labels")
    seen = set()
    for x in elements:
        if x in seen:
            raise DuplicateLabel("duplicate element label", witness=(x,))
        seen.add(x)
    return tuple(elements)


def _label(obj: dict, key: str, known: set[str]) -> str:
    v = obj.get(key)
    if not isinstance(v, str):
        raise DimensionMismatch(f"'{key}' must be a single label")
    if v not in known:
        raise UnknownLabel(f"'{key}' uses an undeclared label", witness=(v,))
    return v


def _label_list(obj: dict, key: str, known: set[str]) -> tuple[str, ...]:
    v = obj.get(key)
    if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
        raise DimensionMismatch(f"'{key}' must be a list of labels")
    for x in v:
        if x not in known:
            raise UnknownLabel(f"'{key}' uses an undeclared label", witness=(x,))
    return tuple(v)


def _table(obj: dict, key: str, n: int, known: set[str]) -> tuple[tuple[str, ...], ...]:
    v = obj.get(key)
    if not isinstance(v, list) or len(v) != n:
        raise DimensionMismatch(f"'{key}' must be a {n}x{n} table")
    rows = []
    for row in v:
        if not isinstance(row, list) or len(row) != n:
            raise DimensionMismatch(f"'{key}' row has wrong length", witness=(key, len(row) if isinstance(row, list) else None))
        for x in row:
            if not isinstance(x, str) or x not in known:
                raise UnknownLabel(f"'{key}' uses an undeclared label", witness=(x,))
        rows.append(tuple(row))
    return tuple(rows)


def _perm(obj: dict, key: str, known: set[str]) -> Optional[dict[str, str]]:
    v = obj.get(key)
    if v is None:
        return None
    if not isinstance(v, dict):
        raise DimensionMismatch(f"'{key}' must be an object mapping labels to labels")
    for a, b in v.items():
        if a not in known:
            raise UnknownLabel(f"'{key}' uses an undeclared label", witness=(a,))
        if b not in known:
            raise UnknownLabel(f"'{key}' uses an undeclared label", witness=(b,))
    return dict(v)


def parse_pair_file(text: str) -> PairFile:
    """Structurally validated pair file; axiom checking happens at build."""
    obj = _load(text)
    elements = _elements(obj)
    known = set(elements)
    n = len(elements)
    return PairFile(
        name=str(obj.get("name", "")),
        elements=elements,
        zero=_label(obj, "zero", known),
        one=_label(obj, "one", known),
        add=_table(obj, "add", n, known),
        mul=_table(obj, "mul", n, known),
        tangible=_label_list(obj, "tangible", known),
        a0=_label_list(obj, "a0", known),
        negation=_perm(obj, "negation", known),
    )


def parse_hyper_file(text: str) -> HyperFile:
    obj = _load(text)
    elements = _elements(obj)
    known = set(elements)
    n = len(elements)
    raw = obj.get("hyperadd")
    if not isinstance(raw, list) or len(raw) != n:
        raise DimensionMismatch(f"'hyperadd' must be a {n}x{n} table of label arrays")
    rows = []
    for row in raw:
        if not isinstance(row, list) or len(row) != n:
            raise DimensionMismatch("'hyperadd' row has wrong length")
        cells = []
        for cell in row:
            if not isinstance(cell, list) or not cell:
                raise DimensionMismatch("'hyperadd' entries must be nonempty label arrays")
            for x in cell:
                if not isinstance(x, str) or x not in known:
                    raise UnknownLabel("'hyperadd' uses an undeclared label", witness=(x,))
            cells.append(tuple(cell))
        rows.append(tuple(cells))
    return HyperFile(
        name=str(obj.get("name", "")),
        elements=elements,
        zero=_label(obj, "zero", known),
        one=_label(obj, "one", known),
        mul=_table(obj, "mul", n, known),
        hyperadd=tuple(rows),
        tangible=_label_list(obj, "tangible", known),
        hypernegation=_perm(obj, "hypernegation", known),
    )


def is_hyper_text(text: str) -> bool:
    try:
        return "hyperadd" in _load(text)
    except DslSyntaxError:
        return False


def serialize(obj) -> str:
    """Deterministic JSON with sorted keys; identical bytes across runs."""
    if hasattr(obj, "to_json_dict"):
        obj = obj.to_json_dict()
    elif hasattr(obj, "to_dict"):
        obj = obj.to_dict()
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


serialize_report = serialize


def build_pair(pf: PairFile) -> tuple[Pair, Optional[NegationMap]]:
    """Semantic validation of a parsed pair file."""
    index = {x: i for i, x in enumerate(pf.elements)}
    n = len(pf.elements)
    add = [[index[x] for x in row] for row in pf.add]
    mul = [[index[x] for x in row] for row in pf.mul]
    st = validate_structure(pf.elements, index[pf.zero], index[pf.one], add, mul)
    pair = validate_pair(st, {index[x] for x in pf.tangible}, {index[x] for x in pf.a0},
                         name=pf.name)
    negation = None
    if pf.negation is not None:
        perm = [index[pf.negation.get(x, x)] for x in pf.elements]
        negation = validate_negation_map(pair, perm)
    return pair, negation


def build_hyper(hf: HyperFile) -> HyperStructure:
    index = {x: i for i, x in enumerate(hf.elements)}
    mul = [[index[x] for x in row] for row in hf.mul]
    hyperadd = [[{index[x] for x in cell} for cell in row] for row in hf.hyperadd]
    neg = None
    if hf.hypernegation is not None:
        neg = [index[hf.hypernegation.get(x, x)] for x in hf.elements]
    return validate_hyperstructure(
        hf.elements, index[hf.zero], index[hf.one], mul, hyperadd,
        tangible={index[x] for x in hf.tangible},
        hypernegation=neg, name=hf.name,
    )


def pair_to_file(pair: Pair, negation: Optional[NegationMap] = None) -> PairFile:
    names = pair.names
    return PairFile(
        name=pair.name,
        elements=names,
        zero=names[pair.zero],
        one=names[pair.one],
        add=tuple(tuple(names[x] for x in row) for row in pair.add),
        mul=tuple(tuple(names[x] for x in row) for row in pair.mul),
        tangible=tuple(names[i] for i in sorted(pair.tangible)),
        a0=tuple(names[i] for i in sorted(pair.a_zero)),
        negation={names[i]: names[negation.perm[i]] for i in range(pair.n)}
        if negation is not None else None,
    )


def hyper_to_file(hyper: HyperStructure) -> HyperFile:
    names = hyper.names
    return HyperFile(
        name=hyper.name,
        elements=names,
        zero=names[hyper.zero],
        one=names[hyper.one],
        mul=tuple(tuple(names[x] for x in row) for row in hyper.mul),
        hyperadd=tuple(
            tuple(tuple(sorted(names[x] for x in hyper.hyperadd_set(i, j)))
                  for j in range(hyper.n))
            for i in range(hyper.n)
        ),
        tangible=tuple(names[i] for i in sorted(hyper.tangible)),
        hypernegation={names[i]: names[hyper.hypernegation[i]] for i in range(hyper.n)}
        if hyper.hypernegation is not None else None,
    )
