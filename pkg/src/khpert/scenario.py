"""Scenario documents: JSON input describing one atom in one laser field."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import SchemaError
from .harmonics import DEFAULT_X_MAX, cutoff_order
from .rates import DEFAULT_REL_TOL
from .units import AtomSpec, LaserParams, bohr_radius, keldysh_gamma, min_harmonic_order

SCHEMA_VERSION = 1

_positive = {"type": "number", "exclusiveMinimum": 0}

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "atom", "laser"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "note": {"type": "string"},
        "atom": {
            "type": "object",
            "required": ["Z", "ionization_IB_eV"],
            "properties": {"Z": {"type": "integer", "minimum": 1}, "ionization_IB_eV": _positive},
            "additionalProperties": False,
        },
        "laser": {
            "type": "object",
            "required": ["photon_energy_eV"],
            "properties": {
                "photon_energy_eV": _positive,
                "intensity_W_cm2": _positive,
                "ponderomotive_Up_eV": _positive,
            },
            "additionalProperties": False,
        },
        "options": {
            "type": "object",
            "properties": {
                "n_max": {"type": ["integer", "null"], "minimum": 0},
                "rel_tol": _positive,
                "x_max": _positive,
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

BUNDLED = ("he", "ne")


@dataclass(frozen=True)
class Scenario:
    atom: AtomSpec
    laser: LaserParams
    name: str = ""
    n_max: int | None = None
    rel_tol: float = DEFAULT_REL_TOL
    x_max: float = DEFAULT_X_MAX
    source: dict = field(default_factory=dict, compare=False)

    @property
    def gamma(self) -> float:
        return keldysh_gamma(self.atom.ionization_IB, self.laser.ponderomotive_Up)

    def report(self) -> dict:
        """Derived parameters: U_p, lambda_L, lambda_L/a, gamma, n0, cutoff order."""
        IB = self.atom.ionization_IB
        w = self.laser.photon_energy_omega
        Up = self.laser.ponderomotive_Up
        lam = self.laser.quiver_amplitude_lambdaL
        n0 = min_harmonic_order(IB, w)
        return {
            "name": self.name,
            "Z": self.atom.Z,
            "ionization_IB_eV": IB,
            "photon_energy_eV": w,
            "intensity_W_cm2": self.laser.intensity,
            "ponderomotive_Up_eV": Up,
            "quiver_amplitude_lambdaL_per_eV": lam,
            "lambdaL_over_a": lam / bohr_radius(self.atom.Z),
            "keldysh_gamma": self.gamma,
            "n0": n0,
            "first_order": 2 * n0 + 1,
            "cutoff_order": cutoff_order(w, IB, Up),
        }


def validate(doc: dict) -> None:
    validator = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)
    problems = [
        f"{'/'.join(str(p) for p in err.absolute_path) or '<root>'}: {err.message}"
        for err in sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    ]
    laser = doc.get("laser") if isinstance(doc, dict) else None
    if isinstance(laser, dict):
        given = [k for k in ("intensity_W_cm2", "ponderomotive_Up_eV") if k in laser]
        if len(given) != 1:
            problems.append("laser: exactly one of intensity_W_cm2, ponderomotive_Up_eV is required")
    if problems:
        raise SchemaError(problems)


def from_dict(doc: dict) -> Scenario:
    validate(doc)
    atom = AtomSpec(doc["atom"]["Z"], float(doc["atom"]["ionization_IB_eV"]))
    las = doc["laser"]
    w = float(las["photon_energy_eV"])
    if "intensity_W_cm2" in las:
        laser = LaserParams.from_intensity(float(las["intensity_W_cm2"]), w)
    else:
        laser = LaserParams.from_ponderomotive(float(las["ponderomotive_Up_eV"]), w)
    opts = doc.get("options", {})
    return Scenario(
        atom=atom,
        laser=laser,
        name=doc.get("name", ""),
        n_max=opts.get("n_max"),
        rel_tol=float(opts.get("rel_tol", DEFAULT_REL_TOL)),
        x_max=float(opts.get("x_max", DEFAULT_X_MAX)),
        source=doc,
    )


def load(path_or_name) -> Scenario:
    """Load a scenario file, or a bundled one by name ("he", "ne")."""
    name = str(path_or_name)
    stem = name[:-5] if name.endswith(".json") else name
    if stem in BUNDLED and not Path(name).exists():
        name = stem
    if name in BUNDLED:
        text = resources.files("khpert.scenarios").joinpath(f"{name}.json").read_text(encoding="utf-8")
    else:
        text = Path(name).read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError([f"<root>: not valid JSON ({exc})"]) from exc
    return from_dict(doc)


def with_ponderomotive(scn: Scenario) -> Scenario:
    """Same scenario with U_p given directly instead of the intensity."""
    doc = json.loads(json.dumps(scn.source))
    las = doc["laser"]
    las.pop("intensity_W_cm2", None)
    las["ponderomotive_Up_eV"] = scn.laser.ponderomotive_Up
    return from_dict(doc)

