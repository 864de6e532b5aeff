"""Instance files (TOML or JSON) and the pinned golden instances."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from dataclasses import field as _field
from pathlib import Path

import tomli

from .field import Field
from .ideal import Ideal, set_dimension
from .monomial import monomials_of_degree
from .poly import ParseError, Ring, format_monomial

STAGES = ("reduction", "superficial", "ratliff_rush", "behaves_well", "depth", "powers",
          "verdicts")


class InstanceError(ValueError):
    """A malformed instance; the message starts with the offending location."""


@dataclass
class InstanceSpec:
    name: str
    vars: list
    gens: list
    field: str = "Q"
    quotient: list = _field(default_factory=list)
    reduction: list | None = None
    superficial: list | None = None
    integrally_closed: str = "verify"
    horizon: int | None = None
    rr_window: int = 3
    dim: int | None = None
    seed: int = 0
    skip: list = _field(default_factory=list)
    description: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict, source: str = "<dict>") -> "InstanceSpec":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise InstanceError(f"{source}: unknown keys {sorted(extra)}")
        try:
            spec = cls(**data)
        except TypeError as exc:
            raise InstanceError(f"{source}: {exc}") from None
        spec.validate(source)
        return spec

    def validate(self, source: str = "<spec>") -> None:
        def need_list(key, value, allow_none=False):
            if value is None and allow_none:
                return
            if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                raise InstanceError(f"{source}: {key} must be a list of strings")

        need_list("ring.vars", self.vars)
        need_list("ideal.gens", self.gens)
        need_list("ring.quotient", self.quotient)
        need_list("pin.reduction", self.reduction, True)
        need_list("pin.superficial", self.superficial, True)
        if not self.gens:
            raise InstanceError(f"{source}: ideal.gens is empty")
        if self.integrally_closed not in ("assert", "verify", "off"):
            raise InstanceError(f"{source}: flags.integrally_closed must be assert, verify or off")
        bad = [s for s in self.skip if s not in STAGES]
        if bad:
            raise InstanceError(f"{source}: limits.skip has unknown stages {bad}")
        for key in ("horizon", "dim"):
            v = getattr(self, key)
            if v is not None and (not isinstance(v, int) or v < 0):
                raise InstanceError(f"{source}: limits.{key} must be a non-negative integer")
        if not isinstance(self.seed, int):
            raise InstanceError(f"{source}: seed must be an integer")
        try:
            Field.parse(self.field)
        except ValueError as exc:
            raise InstanceError(f"{source}: ring.field: {exc}") from None

    # building ---------------------------------------------------------

    def ring(self, field_override: str | None = None) -> Ring:
        K = Field.parse(field_override or self.field)
        try:
            R = Ring(self.vars, K, quotient=[_parse(Ring(self.vars, K), q, f"ring.quotient[{i}]")
                                             for i, q in enumerate(self.quotient)])
        except ValueError as exc:
            if isinstance(exc, InstanceError):
                raise
            raise InstanceError(f"ring.vars: {exc}") from None
        if self.dim is not None:
            set_dimension(R, self.dim)
        return R

    def build(self, field_override: str | None = None) -> tuple:
        """(ring, ideal) with the ideal in its working representation."""
        R = self.ring(field_override)
        gens = [_parse(R, g, f"ideal.gens[{i}]") for i, g in enumerate(self.gens)]
        for key in ("reduction", "superficial"):
            for i, g in enumerate(getattr(self, key) or []):
                _parse(R, g, f"pin.{key}[{i}]")
        return R, Ideal(R, gens).near_origin()


def _parse(R: Ring, text: str, where: str):
    try:
        return R(text)
    except ParseError as exc:
        raise InstanceError(f"{where}: {exc}") from None


_SECTIONS = {
    "ring": {"field": "field", "vars": "vars", "quotient": "quotient"},
    "ideal": {"gens": "gens"},
    "pin": {"reduction": "reduction", "superficial": "superficial"},
    "flags": {"integrally_closed": "integrally_closed"},
    "limits": {"horizon": "horizon", "rr_window": "rr_window", "dim": "dim", "skip": "skip"},
}


def spec_from_document(doc: dict, source: str, default_name: str = "instance") -> InstanceSpec:
    """Flatten the sectioned document layout into an :class:`InstanceSpec`."""
    flat = {"name": doc.get("name", default_name)}
    for key in ("seed", "description"):
        if key in doc:
            flat[key] = doc[key]
    for section, keys in _SECTIONS.items():
        table = doc.get(section, {})
        if not isinstance(table, dict):
            raise InstanceError(f"{source}: [{section}] must be a table")
        unknown = set(table) - set(keys)
        if unknown:
            raise InstanceError(f"{source}: [{section}] has unknown keys {sorted(unknown)}")
        for k, v in table.items():
            flat[keys[k]] = v
    unknown = set(doc) - set(_SECTIONS) - {"name", "seed", "description"}
    if unknown:
        raise InstanceError(f"{source}: unknown top-level keys {sorted(unknown)}")
    for req in ("vars", "gens"):
        if req not in flat:
            raise InstanceError(f"{source}: missing {'ring.vars' if req == 'vars' else 'ideal.gens'}")
    return InstanceSpec.from_dict(flat, source)


def spec_to_document(spec: InstanceSpec) -> dict:
    d = spec.to_dict()
    doc = {"name": d["name"], "seed": d["seed"], "description": d["description"]}
    for section, keys in _SECTIONS.items():
        table = {k: d[attr] for k, attr in keys.items() if d[attr] not in (None, [])}
        if table:
            doc[section] = table
    return doc


def load_instance(path: str | Path) -> InstanceSpec:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    elif path.suffix.lower() == ".toml":
        try:
            doc = tomli.loads(text)
        except tomli.TOMLDecodeError as exc:
            raise InstanceError(f"{path}: {exc}") from None
    else:
        raise InstanceError(f"{path}: expected a .toml or .json file")
    spec = spec_from_document(doc, str(path), path.stem)
    spec.build()
    return spec


# ---------------------------------------------------------------------------
# golden instances


def _degree_monomials(vars: list, d: int) -> list:
    return [format_monomial(e, vars) for e in monomials_of_degree(len(vars), d)]


def golden_instances() -> dict:
    xyz = ["x", "y", "z"]
    a_gens = ["x^4", "y^4", "z^4", "x^3*y", "x*y^3", "y^3*z", "y*z^3", "x^3*z", "x*z^3"]
    out = {
        "a": InstanceSpec(
            "a", xyz, a_gens, reduction=["x^4", "y^4", "z^4"],
            description="running monomial example with the two cyclic partners x^3z, xz^3"),
        "a-literal": InstanceSpec(
            "a-literal", xyz, a_gens[:7], reduction=["x^4", "y^4", "z^4"],
            description="the seven listed generators, regression values"),
        "b": InstanceSpec(
            "b", xyz, ["x^2-y^2", "y^2-z^2", "x*y", "y*z", "x*z"],
            description="behaves well although G(I) has depth zero"),
        "c": InstanceSpec(
            "c", xyz,
            ["x^4", "x*y^3+x*z^3", "y^4+y*z^3", "y^3*z+z^4"] + _degree_monomials(xyz, 5),
            field="Fp:32003", integrally_closed="assert", skip=["depth", "behaves_well", "powers"],
            description="N + m^5, integrally closed by assertion"),
        "d": InstanceSpec(
            "d", ["X", "Y", "Z", "U", "V", "W"], ["X", "Y", "Z", "U", "V", "W"],
            field="Fp:32003",
            quotient=["Z^2", "Z*U", "Z*V", "U*V", "Y*Z-U^3", "X*Z-V^3"],
            description="maximal ideal of a depth-one quotient"),
        "e": InstanceSpec(
            "e", ["Y", "V1", "V2", "V3", "Z1", "Z2", "Z3"],
            ["Y", "V1", "V2", "V3", "Z1", "Z2", "Z3"], field="Fp:32003",
            quotient=["Y^2", "Y*V1", "Y*V2", "Y*V3", "V1*V2", "V1*V3", "V2*V3",
                      "V1^3-Z1*Y", "V2^3-Z2*Y", "V3^3-Z3*Y"],
            reduction=["Z1", "Z2", "Z3"], skip=["behaves_well", "powers"],
            description="family instance m = 0, d = 3"),
        "d4": InstanceSpec(
            "d4", ["x", "y", "z", "u"],
            ["x^3", "y^3", "z^3", "u^3", "x*y^2", "y*z^2", "z*u^2", "x*y*z", "x*y*u"],
            field="Fp:32003", skip=["behaves_well", "powers"],
            description="four-variable example"),
        "parameter": InstanceSpec(
            "parameter", xyz, ["x", "y", "z"], description="the maximal ideal of k[x,y,z]"),
    }
    return out


# values every correct build reproduces; "source" marks where each set comes from
GOLDEN_VALUES = {
    "a": {"h": [30, 12, 22, 8, -2, -12, 6], "e": [64, 48, 4, 0], "r": 4, "depth": 0, "D": -10},
    "a-literal": {"h": [35, 10, 15, 6, 1, -4, 1], "e": [64, 48, 14, -10]},
    "b": {"h": [5, 0, 6, -4, 1], "e": [8, 4, 0, 0], "behaves_well": True},
    "c": {"h": [31, 43, 1, 1], "e": [76, 48, 4, 1], "r": 3},
    "d": {"h": [1, 3, 0, 3, -1], "e": [6, 8, 3, -1], "behaves_well": False, "depth": 1},
    "e": {"e": [8, 11, 4, 0], "r": 3},
    "d4": {"h": [33, 19, 21, 7, 5, -3, -1], "e": [81, 81, 27, -23], "r": 4, "depth": 2},
    "parameter": {"h": [1], "e": [1, 0, 0, 0], "r": 0},
}
