"""Two one-parameter families of mixed triples that share line distances and a
Cartan-type value while their eta invariants, and hence their congruence
classes, vary.

Family I: two fixed isotropic points and a negative point moving on the
quaternionic line through them.  Family II: two fixed negative points and an
isotropic point moving along the boundary of the line they span.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .congruence import congruent
from .errors import InputError
from .hermspace import HermitianSpace, ProjectivePoint
from .invariants import InvariantProfile, cartan, profile
from .quaternion import ComplexRep

FAMILIES = ("I", "II")

DEFAULT_PARAMS = {
    "I": [0.25, 0.5, 0.75],
    "II": [k * math.pi / 4 for k in range(5)],
}


def _embed(space: HermitianSpace, first, last=1.0) -> list:
    """Coordinates ``(first, 0, ..., 0, last)`` in H^{n,1}."""
    return [first] + [0.0] * (space.n - 1) + [last]


@dataclass
class FamilyMember:
    family: str
    param: float
    triple: list[ProjectivePoint]
    cao_invariants: dict[str, float]
    invariants: InvariantProfile

    @property
    def eta(self) -> ComplexRep:
        return self.invariants.eta


def example_I(space: HermitianSpace, y: float) -> FamilyMember:
    """Points ``(1,0,1)``, ``(-1,0,1)``, ``(iy,0,1)`` for ``0 < y < 1``."""
    if not 0.0 < y < 1.0:
        raise InputError(f"Example I needs 0 < y < 1, got {y}")
    p = [space.point(_embed(space, c)) for c in (1.0, -1.0, complex(0.0, y))]
    line = [p[0].rep, p[1].rep]
    cao = {
        "line_distance": space.distance_to_span(p[2], line),
        "cartan": cartan(space, *p),
    }
    return FamilyMember("I", y, p, cao, profile(space, *p))


def example_II(space: HermitianSpace, theta: float) -> FamilyMember:
    """Points ``(e^{i theta},0,1)``, ``(0,0,1)``, ``(1/2,0,1)``."""
    if not math.isfinite(theta):
        raise InputError("theta must be finite")
    e = complex(math.cos(theta), math.sin(theta))
    p = [space.point(_embed(space, c)) for c in (e, 0.0, 0.5)]
    cao = {
        "d1": space.distance_to_span(p[2], [p[0].rep, p[1].rep]),
        "d2": space.distance_to_span(p[1], [p[0].rep, p[2].rep]),
        "d3": space.bergman_distance(p[1], p[2]),
    }
    return FamilyMember("II", theta, p, cao, profile(space, *p))


def eta_closed_form(family: str, param: float) -> complex:
    """Uncanonicalized eta along each family, in closed form."""
    if family == "I":
        y = param
        return complex(0.5, y / (y * y - 1.0))
    if family == "II":
        return (0.5 * complex(math.cos(param), -math.sin(param)) - 1.0) / -0.75
    raise InputError(f"unknown family {family!r}")


def member(space: HermitianSpace, family: str, param: float) -> FamilyMember:
    if family == "I":
        return example_I(space, param)
    if family == "II":
        return example_II(space, param)
    raise InputError(f"unknown family {family!r}; choose from {FAMILIES}")


@dataclass
class RefutationReport:
    family: str
    members: list[FamilyMember]
    verdicts: list[bool]
    cao_constant: bool
    distinct_eta: bool
    cao_spread: dict[str, float] = field(default_factory=dict)

    @property
    def refutes(self) -> bool:
        """Cao-type quantities agree across the family while some pair is not congruent."""
        return self.cao_constant and not all(self.verdicts)

    def rows(self) -> list[dict]:
        out = []
        for m, v in zip(self.members, self.verdicts):
            row = {"param": m.param}
            row.update(m.cao_invariants)
            row["eta_re"] = m.eta.re
            row["eta_im"] = m.eta.im
            row["congruent_to_first"] = v
            out.append(row)
        return out

    def to_csv(self) -> str:
        rows = self.rows()
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(v) for k, v in row.items()})
        return buf.getvalue()

    def to_markdown(self) -> str:
        rows = self.rows()
        keys = list(rows[0])
        lines = [f"# Family {self.family}", ""]
        lines.append("| " + " | ".join(keys) + " |")
        lines.append("|" + "---|" * len(keys))
        for row in rows:
            lines.append("| " + " | ".join(_fmt(row[k], short=True) for k in keys) + " |")
        lines.append("")
        spread = ", ".join(f"{k}: {v:.3g}" for k, v in self.cao_spread.items())
        lines.append(f"- line/Cartan quantities constant across the family: {self.cao_constant} ({spread})")
        lines.append(f"- eta pairwise distinct: {self.distinct_eta}")
        lines.append(f"- some member not congruent to the first: {not all(self.verdicts)}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rows": self.rows(),
            "cao_constant": self.cao_constant,
            "cao_spread": dict(self.cao_spread),
            "distinct_eta": self.distinct_eta,
            "refutes": self.refutes,
        }


def _fmt(v, short: bool = False) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6g}" if short else format(v, ".17g")
    return str(v)


# quantities expected to stay constant along each family
_CONSTANT_KEYS = {"I": ("line_distance",), "II": ("d1", "d2", "d3")}


def refutation_report(family: str, params=None, space: HermitianSpace | None = None,
                      const_tol: float = 1e-9, eta_sep: float = 0.05) -> RefutationReport:
    if family not in FAMILIES:
        raise InputError(f"unknown family {family!r}; choose from {FAMILIES}")
    space = HermitianSpace(2) if space is None else space
    params = DEFAULT_PARAMS[family] if params is None else list(params)
    if not params:
        raise InputError("at least one parameter value is needed")
    members = [member(space, family, t) for t in params]
    first = members[0]
    verdicts = [bool(congruent(space, first.triple, m.triple)) for m in members]
    spread = {}
    for key in _CONSTANT_KEYS[family]:
        vals = [m.cao_invariants[key] for m in members]
        spread[key] = max(vals) - min(vals)
    cao_constant = all(v <= const_tol for v in spread.values())
    etas = [m.eta for m in members]
    distinct = all(
        max(abs(a.re - b.re), abs(a.im - b.im)) > eta_sep
        for i, a in enumerate(etas) for b in etas[i + 1:]
    )
    return RefutationReport(family, members, verdicts, cao_constant, distinct, spread)
