"""Instance files: a calibrated space plus labelled functionals and subspaces.

The on-disk format is JSON with a top-level ``"format": 1``.  Every number
is a rational written as a string (``"3/4"``) or a JSON integer; a float
literal anywhere is a parse error, so exactness is guaranteed by the format.

    {
      "format": 1,
      "name": "wedge",
      "dim": 2,
      "cone": {"generators": [["4", "1"], ["8", "1"]]},
      "seminorms": [{"name": "sup", "rows": [["1", "0"], ["0", "1"]]}],
      "functionals": {"f": ["1", "1"]},
      "subspaces": {"X": {"basis": [["1", "-2"]], "functionals": {"f": ["2"]}}},
      "order_units": {"e": ["1", "1"]},
      "expected": {...}
    }
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .cone import PolyCone
from .exactla import ContractError, RVec, format_rat, rank, rat
from .space import (CalibratedSpace, NotPointedError, NotSeparatingError,
                    PolyhedralSeminorm, Subspace, sup_seminorm)

FORMAT = 1
MAX_GEN_DIM = 4


class InputError(ContractError):
    """A malformed instance; ``path`` locates the offending value (``$.cone.generators[1]``)."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class Instance:
    space: CalibratedSpace
    name: str = ""
    functionals: Dict[str, RVec] = field(default_factory=dict)
    subspaces: Dict[str, Tuple[Subspace, Dict[str, RVec]]] = field(default_factory=dict)
    order_units: Dict[str, RVec] = field(default_factory=dict)
    expected: Dict[str, Any] = field(default_factory=dict)
    notes: str = ""


# -- parsing ---------------------------------------------------------------------------

def _no_floats(literal: str):
    raise InputError("$", f"float literal {literal} is not allowed; write rationals as strings like \"1/2\"")


def _load_json(text: str) -> Any:
    try:
        return json.loads(text, parse_float=_no_floats, parse_constant=_no_floats)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _rat(value: Any, path: str) -> Fraction:
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise InputError(path, f"expected a rational string or integer, got {value!r}")
    try:
        return rat(value)
    except ContractError as exc:
        raise InputError(path, str(exc)) from None


def _vector(value: Any, path: str, dim: Optional[int]) -> RVec:
    if not isinstance(value, list) or not value:
        raise InputError(path, "expected a nonempty list of rationals")
    v = tuple(_rat(a, f"{path}[{i}]") for i, a in enumerate(value))
    if dim is not None and len(v) != dim:
        raise InputError(path, f"expected length {dim}, got {len(v)}")
    return v


def _vectors(value: Any, path: str, dim: Optional[int]) -> List[RVec]:
    if not isinstance(value, list):
        raise InputError(path, "expected a list of vectors")
    return [_vector(v, f"{path}[{i}]", dim) for i, v in enumerate(value)]


def _table(value: Any, path: str) -> Dict[str, Any]:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise InputError(path, "expected an object keyed by label")
    return value


def instance_from_data(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise InputError("$", "instance must be a JSON object")
    if data.get("format") != FORMAT:
        raise InputError("$.format", f"expected format {FORMAT}, got {data.get('format')!r}")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError("$.dim", f"expected a positive integer, got {dim!r}")
    cone_data = _table(data.get("cone"), "$.cone")
    gens = _vectors(cone_data.get("generators", []), "$.cone.generators", dim)
    raw = data.get("seminorms")
    if not isinstance(raw, list) or not raw:
        raise InputError("$.seminorms", "expected a nonempty list of {name, rows}")
    seminorms = []
    for i, entry in enumerate(raw):
        path = f"$.seminorms[{i}]"
        if not isinstance(entry, dict):
            raise InputError(path, "expected an object with name and rows")
        rows = _vectors(entry.get("rows"), f"{path}.rows", dim)
        try:
            seminorms.append(PolyhedralSeminorm(str(entry.get("name", f"p{i}")), rows))
        except ContractError as exc:
            raise InputError(path, str(exc)) from None
    try:
        space = CalibratedSpace(PolyCone(dim, gens), seminorms)
    except NotPointedError as exc:
        raise InputError("$.cone.generators", str(exc)) from None
    except NotSeparatingError as exc:
        raise InputError("$.seminorms", str(exc)) from None

    inst = Instance(space, str(data.get("name", "")))
    for label, v in _table(data.get("functionals"), "$.functionals").items():
        inst.functionals[label] = _vector(v, f"$.functionals.{label}", dim)
    for label, v in _table(data.get("order_units"), "$.order_units").items():
        inst.order_units[label] = _vector(v, f"$.order_units.{label}", dim)
    for label, entry in _table(data.get("subspaces"), "$.subspaces").items():
        path = f"$.subspaces.{label}"
        entry = _table(entry, path)
        basis = _vectors(entry.get("basis"), f"{path}.basis", dim)
        try:
            sub = Subspace(tuple(basis))
        except ContractError as exc:
            raise InputError(f"{path}.basis", str(exc)) from None
        fs = {k: _vector(v, f"{path}.functionals.{k}", sub.dim)
              for k, v in _table(entry.get("functionals"), f"{path}.functionals").items()}
        inst.subspaces[label] = (sub, fs)
    inst.expected = _table(data.get("expected"), "$.expected")
    notes = data.get("notes", "")
    if not isinstance(notes, str):
        raise InputError("$.notes", "expected a string")
    inst.notes = notes
    return inst


def parse_instance(text: str) -> Instance:
    return instance_from_data(_load_json(text))


def parse_space(text: str) -> CalibratedSpace:
    return parse_instance(text).space


def load_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# -- serialization ---------------------------------------------------------------------

def _svec(v: Sequence[Fraction]) -> List[str]:
    return [format_rat(a) for a in v]


def instance_to_data(inst: Instance) -> Dict[str, Any]:
    s = inst.space
    data: Dict[str, Any] = {"format": FORMAT}
    if inst.name:
        data["name"] = inst.name
    data["dim"] = s.dim
    data["cone"] = {"generators": [_svec(g) for g in s.cone.generators]}
    data["seminorms"] = [{"name": p.name, "rows": [_svec(r) for r in p.rows]} for p in s.seminorms]
    if inst.functionals:
        data["functionals"] = {k: _svec(v) for k, v in inst.functionals.items()}
    if inst.subspaces:
        data["subspaces"] = {k: {"basis": [_svec(b) for b in sub.basis],
                                 "functionals": {fk: _svec(fv) for fk, fv in fs.items()}}
                             for k, (sub, fs) in inst.subspaces.items()}
    if inst.order_units:
        data["order_units"] = {k: _svec(v) for k, v in inst.order_units.items()}
    if inst.expected:
        data["expected"] = inst.expected
    if inst.notes:
        data["notes"] = inst.notes
    return data


_SCALAR = r'"(?:[^"\\]|\\.)*"|-?\d+'
_TOKEN = re.compile(_SCALAR)
_FLAT_LIST = re.compile(rf'\[\s*((?:{_SCALAR})(?:,\s*(?:{_SCALAR}))*)\s*\]')


def dumps(data: Any) -> str:
    """Indented JSON with scalar lists (vectors) kept on one line."""
    text = json.dumps(data, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + ", ".join(_TOKEN.findall(m.group(1))) + "]", text)


def serialize_instance(inst: Instance) -> str:
    return dumps(instance_to_data(inst))


def serialize_space(s: CalibratedSpace, name: str = "") -> str:
    return serialize_instance(Instance(s, name))


def same_space(s1: CalibratedSpace, s2: CalibratedSpace) -> bool:
    """Identical data: generators and seminorm rows (as normalized on construction)."""
    return (s1.dim == s2.dim and s1.cone.generators == s2.cone.generators
            and [(p.name, p.rows) for p in s1.seminorms] == [(p.name, p.rows) for p in s2.seminorms])


# -- fixtures --------------------------------------------------------------------------

def fixture_names() -> List[str]:
    root = resources.files("ordrep") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_fixture(name: str) -> Instance:
    root = resources.files("ordrep") / "fixtures"
    return parse_instance((root / f"{name}.json").read_text(encoding="utf-8"))


# -- random instances ------------------------------------------------------------------

def _random_vector(rng: random.Random, dim: int, bound: int) -> RVec:
    while True:
        v = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(dim))
        if any(v):
            return v


def _random_cone(rng: random.Random, dim: int, max_gens: int) -> List[RVec]:
    family = rng.choice(["orthant", "random", "random", "simplicial"])
    if family == "orthant":
        return [tuple(Fraction(int(i == k)) for i in range(dim)) for k in range(dim)]
    if family == "simplicial":
        # a basis-generated cone, pointed whenever the basis is independent
        while True:
            gens = [_random_vector(rng, dim, 3) for _ in range(dim)]
            if rank(gens) == dim:
                return gens
    # random rays in an open half-space, hence pointed
    normal = _random_vector(rng, dim, 2)
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        for _ in range(50):
            g = _random_vector(rng, dim, 4)
            if sum(a * b for a, b in zip(g, normal)) > 0:
                gens.append(g)
                break
    return gens


def _random_rows(rng: random.Random, dim: int, nrows: int) -> List[RVec]:
    if rng.random() < 0.3 and nrows >= dim:
        return [tuple(Fraction(int(i == k)) for i in range(dim)) for k in range(dim)]
    return [_random_vector(rng, dim, 3) for _ in range(nrows)]


def generate_instance(seed: int, dim: Optional[int] = None, max_gens: int = 5, max_rows: int = 5,
                      max_seminorms: int = 2, rank_deficient: bool = False) -> Instance:
    """A random valid instance, determined by the arguments.

    ``dim=None`` draws the dimension from 1..3.  ``rank_deficient`` makes the
    first seminorm's rows span a proper subspace (needs ``dim >= 2``).
    """
    if dim is not None and not 1 <= dim <= MAX_GEN_DIM:
        raise ContractError(f"generated dimension must be in 1..{MAX_GEN_DIM}")
    if not (1 <= max_gens <= 6 and 1 <= max_rows <= 6 and 1 <= max_seminorms):
        raise ContractError("max_gens and max_rows must be in 1..6, max_seminorms >= 1")
    rng = random.Random(seed)
    d = dim if dim is not None else rng.randint(2 if rank_deficient else 1, 3)
    if rank_deficient and d < 2:
        raise ContractError("a rank-deficient seminorm needs dim >= 2")
    for _ in range(200):
        gens = _random_cone(rng, d, max_gens)
        count = rng.randint(1, max_seminorms)
        if rank_deficient:
            count = max(count, 2)
        rowsets = [_random_rows(rng, d, rng.randint(1, max_rows)) for _ in range(count)]
        if rank_deficient:
            rowsets[0] = [_random_vector(rng, d, 3) for _ in range(rng.randint(1, max_rows))]
            base = rowsets[0][0]
            rowsets[0] = [r for r in rowsets[0] if rank([base, r]) == 1] if d == 2 else rowsets[0][:d - 1]
            if rank(rowsets[0]) >= d:
                continue
        if rank([r for rows in rowsets for r in rows]) < d:
            rowsets.append(list(sup_seminorm(d).rows))
        try:
            space = CalibratedSpace(PolyCone(d, gens),
                                    [PolyhedralSeminorm(f"p{i}", rows) for i, rows in enumerate(rowsets)])
        except ContractError:
            continue
        return Instance(space, f"gen-{seed}-d{d}" + ("-def" if rank_deficient else ""))
    raise ContractError(f"no valid instance found for seed {seed}")
