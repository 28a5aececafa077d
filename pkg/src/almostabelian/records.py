"""Serialisation of models and their invariants.

One JSON record format is shared by the `invariants` and `export`
commands; EXPORT_SCHEMA is the published JSON Schema for it.  The
compact text format writes each differential as sums of wedge pairs of
generator indices, conjugates suffixed with `b`, as customary in the
low-dimensional classification tables.
"""

import json
from dataclasses import dataclass

from .cohomology import closed_table, oracle_table, frolicher_holds, verify_symmetry
from .model import (
    ComplexModel,
    build_algebra,
    nijenhuis_vanishes,
    structure_equations,
)
from .partitions import Partition

EXPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "almostabelian model record",
    "type": "object",
    "additionalProperties": False,
    "required": ["n", "q", "j", "epsilon", "m", "step", "betti", "hodge", "equations", "checks"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "q": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "j": {"type": "integer", "minimum": 1},
        "epsilon": {"enum": [0, 1]},
        "m": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "step": {"type": "integer", "minimum": 1},
        "betti": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "hodge": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
        "equations": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["gen", "d"],
                "properties": {
                    "gen": {"type": "string"},
                    "d": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["coef", "factors"],
                            "properties": {
                                "coef": {"type": "integer"},
                                "factors": {
                                    "type": "array",
                                    "items": {"type": "string"},
                                    "minItems": 2,
                                    "maxItems": 2,
                                },
                            },
                        },
                    },
                },
            },
        },
        "checks": {
            "type": "object",
            "additionalProperties": False,
            "required": ["frolicher", "symmetry", "nijenhuis"],
            "properties": {
                "frolicher": {"type": "boolean"},
                "symmetry": {"type": ["boolean", "null"]},
                "nijenhuis": {"type": "boolean"},
            },
        },
        "source": {"enum": ["closed-form", "oracle"]},
    },
}


def factor_label(factor):
    """Serialised name of a 1-form factor; conjugation marked by `_bar`."""
    name, bar = factor
    return name + "_bar" if bar else name


def parse_factor(label):
    if label.endswith("_bar"):
        return (label[:-4], True)
    return (label, False)


def equations_payload(eqs):
    """Structure equations as plain JSON data, in generator order."""
    rules = eqs.rules_dict()
    out = []
    for gen in eqs.generators:
        out.append(
            {
                "gen": gen,
                "d": [
                    {"coef": coef, "factors": [factor_label(f1), factor_label(f2)]}
                    for coef, (f1, f2) in rules[gen]
                ],
            }
        )
    return out


@dataclass(frozen=True)
class ExportRecord:
    """Everything the CLI reports about one model, JSON-ready."""

    n: int
    q: tuple
    j: int
    epsilon: int
    m: tuple
    step: int
    betti: tuple
    hodge: tuple
    equations: tuple  # as produced by equations_payload, frozen
    checks: tuple  # ((name, value), ...) in fixed order
    source: str

    @classmethod
    def for_model(cls, model, source="closed-form"):
        table = closed_table(model) if source == "closed-form" else oracle_table(model)
        rep = verify_symmetry(model, table=table)
        symmetry = (rep.hodge_symmetric and rep.odd_betti_even) if model.epsilon == 0 else None
        checks = (
            ("frolicher", frolicher_holds(table.betti, table.hodge)),
            ("symmetry", symmetry),
            ("nijenhuis", nijenhuis_vanishes(build_algebra(model))),
        )
        payload = equations_payload(structure_equations(model))
        frozen_eqs = tuple(
            (item["gen"], tuple((t["coef"], tuple(t["factors"])) for t in item["d"]))
            for item in payload
        )
        return cls(
            n=model.n,
            q=model.q.parts,
            j=model.j,
            epsilon=model.epsilon,
            m=model.m.parts,
            step=model.step,
            betti=table.betti,
            hodge=table.hodge,
            equations=frozen_eqs,
            checks=checks,
            source=table.source,
        )

    def model(self):
        return ComplexModel(self.n, Partition(self.q), self.j)

    def to_dict(self):
        return {
            "n": self.n,
            "q": list(self.q),
            "j": self.j,
            "epsilon": self.epsilon,
            "m": list(self.m),
            "step": self.step,
            "betti": list(self.betti),
            "hodge": [list(row) for row in self.hodge],
            "equations": [
                {
                    "gen": gen,
                    "d": [{"coef": c, "factors": list(fs)} for c, fs in terms],
                }
                for gen, terms in self.equations
            ],
            "checks": dict(self.checks),
            "source": self.source,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data):
        checks = data["checks"]
        return cls(
            n=data["n"],
            q=tuple(data["q"]),
            j=data["j"],
            epsilon=data["epsilon"],
            m=tuple(data["m"]),
            step=data["step"],
            betti=tuple(data["betti"]),
            hodge=tuple(tuple(row) for row in data["hodge"]),
            equations=tuple(
                (item["gen"], tuple((t["coef"], tuple(t["factors"])) for t in item["d"]))
                for item in data["equations"]
            ),
            checks=(
                ("frolicher", checks["frolicher"]),
                ("symmetry", checks["symmetry"]),
                ("nijenhuis", checks["nijenhuis"]),
            ),
            source=data.get("source", "closed-form"),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _index_token(idx, bar):
    token = str(idx) if idx <= 9 else "(%d)" % idx
    return token + "b" if bar else token


def compact_equations(eqs):
    """One-line structure equations in the compact index notation.

    Generators are numbered from 1 in their canonical order; each entry
    is dphi^k as a sum of wedge pairs, a conjugate index carrying a `b`
    suffix, e.g. `(0, 11b)` for the smallest overlap model.
    """
    index = {name: i + 1 for i, name in enumerate(eqs.generators)}
    rules = eqs.rules_dict()
    entries = []
    for gen in eqs.generators:
        terms = []
        for coef, (f1, f2) in rules[gen]:
            pair = _index_token(index[f1[0]], f1[1]) + _index_token(index[f2[0]], f2[1])
            if coef == 1:
                terms.append(pair)
            elif coef == -1:
                terms.append("-" + pair)
            else:
                terms.append("%d*%s" % (coef, pair))
        entries.append("+".join(terms) if terms else "0")
    return "(" + ", ".join(entries) + ")"
