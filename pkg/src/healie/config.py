"""Algebra configurations: JSON files or the built-in names shipped in ``healie/data``.

Schema::

    {
      "name": "sl2_twisted",
      "type": "sl2" | "sl3" | "custom",
      "structure": {...},           # required for "custom"
      "cartan": [{"h": 1}, ...],    # optional override of the Cartan h(0)
      "n": 2,
      "m": [2, 1],
      "automorphisms": ["identity" | {"diagonal": [e_1, ...]} | {"matrix": [[...]]}, ...],
      "elements": {"x": "e(1,0)", ...}
    }

``{"diagonal": [e_j]}`` sends basis vector j to zeta_{m_i}^{e_j} times itself.
Matrix entries follow the column convention of ``AutomorphismSet``.

A custom structure is ``{"labels": [...], "brackets": [[a, b, {c: scalar}]],
"cartan": [{label: scalar}], "form": [[a, b, scalar]], "simple_roots": [[...]]}``;
"form" and "simple_roots" are optional.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from importlib import resources
from pathlib import Path

from .lattice import GradingLattice
from .scalars import CyclotomicField, lcm
from .serialize import SerializationError, scalar_from_json, scalar_to_json
from .simple_lie import BUILTIN_TYPES, AutomorphismSet, SimpleLieAlgebra
from .tau import TauAlgebra

_LABEL = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


class ConfigError(ValueError):
    pass


@dataclass
class AlgebraConfig:
    name: str
    raw: dict
    g: SimpleLieAlgebra
    auts: AutomorphismSet
    tau: TauAlgebra
    elements: dict = dc_field(default_factory=dict)

    @property
    def lattice(self) -> GradingLattice:
        return self.auts.lattice

    @property
    def field(self) -> CyclotomicField:
        return self.g.field


def builtin_names() -> list[str]:
    pkg = resources.files("healie") / "data"
    return sorted(p.name[:-5] for p in pkg.iterdir() if p.name.endswith(".json"))


def read_config(source: str) -> dict:
    """Read a config from a path, or from a built-in name (with or without .json)."""
    path = Path(source)
    if path.is_file():
        text = path.read_text()
    else:
        stem = source[:-5] if source.endswith(".json") else source
        stem = Path(stem).name
        res = resources.files("healie") / "data" / f"{stem}.json"
        if not res.is_file():
            raise ConfigError(f"no config file {source!r} and no built-in named {stem!r}")
        text = res.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None


def load_config(source, *, validate: bool = True, hamiltonian_cocycle: bool = True) -> AlgebraConfig:
    raw = source if isinstance(source, dict) else read_config(source)
    try:
        return build_config(raw, validate=validate, hamiltonian_cocycle=hamiltonian_cocycle)
    except (KeyError, TypeError, SerializationError) as exc:
        raise ConfigError(f"malformed config: {exc!r}") from None


def build_config(raw: dict, *, validate: bool = True, hamiltonian_cocycle: bool = True) -> AlgebraConfig:
    n = int(raw["n"])
    m = tuple(int(x) for x in raw["m"])
    lattice = GradingLattice(n, m)
    field = CyclotomicField(int(raw.get("N", lcm(m))))
    if field.N % lcm(m):
        raise ConfigError(f"N={field.N} is not a multiple of lcm(m)={lcm(m)}")
    g = _build_g(raw, field, validate)
    auts = AutomorphismSet(g, _automorphisms(raw, g, lattice), lattice, validate=validate)
    if validate:
        auts._spaces  # noqa: B018  eigenspace dimensions are checked here
    tau = TauAlgebra(g, auts, hamiltonian_cocycle=hamiltonian_cocycle)
    elements = dict(raw.get("elements", {}))
    return AlgebraConfig(raw.get("name", "custom"), raw, g, auts, tau, elements)


def _build_g(raw: dict, field: CyclotomicField, validate: bool) -> SimpleLieAlgebra:
    kind = raw.get("type", "custom")
    if kind == "custom" or "structure" in raw:
        if "structure" not in raw:
            raise ConfigError("custom type needs a 'structure' table")
        return structure_from_json(raw["structure"], field, validate=validate, name=raw.get("name", "custom"))
    if kind not in BUILTIN_TYPES:
        raise ConfigError(f"unknown type {kind!r}; expected one of {sorted(BUILTIN_TYPES)} or 'custom'")
    g = BUILTIN_TYPES[kind](field)
    if "cartan" in raw:
        cartan = [_label_vector(g.labels, h, field) for h in raw["cartan"]]
        g = SimpleLieAlgebra(
            g.labels, g.struct, field, form=g.form_table, cartan=cartan, name=g.name, validate=validate
        )
    return g


def _label_vector(labels, obj: dict, field) -> dict:
    idx = {lab: i for i, lab in enumerate(labels)}
    out = {}
    for lab, s in obj.items():
        if lab not in idx:
            raise ConfigError(f"unknown basis label {lab!r}")
        c = scalar_from_json(field, s)
        if c:
            out[idx[lab]] = c
    return out


def structure_from_json(obj: dict, field: CyclotomicField, *, validate: bool = True, name="custom") -> SimpleLieAlgebra:
    labels = list(obj["labels"])
    for lab in labels:
        if not _LABEL.match(lab) or re.fullmatch(r"[Kd]\d+|zeta", lab):
            raise ConfigError(f"basis label {lab!r} is not usable in expressions")
    idx = {lab: i for i, lab in enumerate(labels)}
    brackets = {}
    for a, b, v in obj["brackets"]:
        if a not in idx or b not in idx:
            raise ConfigError(f"bracket entry mentions unknown label in ({a}, {b})")
        brackets[(idx[a], idx[b])] = _label_vector(labels, v, field)
    form = None
    if "form" in obj:
        form = {(idx[a], idx[b]): scalar_from_json(field, c) for a, b, c in obj["form"]}
    cartan = [_label_vector(labels, h, field) for h in obj.get("cartan", [])]
    simple = obj.get("simple_roots")
    if simple is not None:
        simple = [[scalar_from_json(field, c) for c in a] for a in simple]
    return SimpleLieAlgebra(
        labels, brackets, field, form=form, cartan=cartan, simple_roots=simple, name=name, validate=validate
    )


def structure_to_json(g: SimpleLieAlgebra) -> dict:
    """Export a structure table in the custom-config schema (one entry per unordered pair)."""
    labs = g.labels
    brackets = []
    for (i, j), v in sorted(g.struct.items()):
        if i < j and v:
            brackets.append([labs[i], labs[j], {labs[k]: scalar_to_json(c) for k, c in sorted(v.items())}])
    form = [[labs[i], labs[j], scalar_to_json(c)] for (i, j), c in sorted(g.form_table.items()) if i <= j]
    cartan = [{labs[k]: scalar_to_json(c) for k, c in sorted(h.items())} for h in g.cartan]
    return {
        "labels": list(labs),
        "brackets": brackets,
        "form": form,
        "cartan": cartan,
        "simple_roots": [[scalar_to_json(c) for c in a] for a in g.simple_roots],
    }


def _automorphisms(raw: dict, g: SimpleLieAlgebra, lattice: GradingLattice):
    specs = raw["automorphisms"]
    if len(specs) != lattice.n:
        raise ConfigError(f"expected {lattice.n} automorphisms, got {len(specs)}")
    field = g.field
    one, zero = field.one, field.zero
    mats = []
    for i, spec in enumerate(specs):
        if spec == "identity":
            mats.append([[one if a == b else zero for b in range(g.dim)] for a in range(g.dim)])
        elif isinstance(spec, dict) and "diagonal" in spec:
            exps = spec["diagonal"]
            if len(exps) != g.dim:
                raise ConfigError(f"automorphism {i + 1}: diagonal needs {g.dim} exponents")
            root = [field.root_of_unity(lattice.m[i], int(e)) for e in exps]
            mats.append([[root[a] if a == b else zero for b in range(g.dim)] for a in range(g.dim)])
        elif isinstance(spec, dict) and "matrix" in spec:
            mats.append([[scalar_from_json(field, c) for c in row] for row in spec["matrix"]])
        else:
            raise ConfigError(f"automorphism {i + 1}: expected 'identity', diagonal or matrix")
    return mats


def describe(cfg: AlgebraConfig) -> dict:
    return {
        "name": cfg.name,
        "g": cfg.g.name,
        "dim": cfg.g.dim,
        "n": cfg.lattice.n,
        "m": list(cfg.lattice.m),
        "N": cfg.field.N,
    }
