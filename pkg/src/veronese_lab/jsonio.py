"""JSON config parsing and result serialization.

Config files look like::

    {"r": 2, "field": "rational", "points": [["1", "0", "1/2"], ...], "d": 2}

``field`` is ``"rational"``, ``"fp:<prime>"`` or ``"float"``.  Exact
coordinates are integers or ``"a/b"`` strings and are never written back as
floats.  Optional keys: ``d``, ``m``, ``d_max``, ``eps``, ``seed``,
``trials``, ``n`` and ``homogenize`` (float clouds given in affine
coordinates).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import InvalidInputError
from .exactcore import FieldSpec
from .fit import DegreeSearch, FitResult, FloatCloud
from .singular import Capped, ClassificationReport, SingularSupport, SpecialVerdict
from .variety import LinearSystem, MembershipVerdict, MultidegreeReport
from .veronese import HypersurfaceForm, PointConfig, ProjPoint

SCHEMA_VERSION = 1

_OPTIONAL_INT = ("d", "m", "d_max", "seed", "trials", "n")
_KNOWN_KEYS = {"r", "field", "points", "eps", "homogenize", *_OPTIONAL_INT}


@dataclass
class Config:
    r: int | None
    field: FieldSpec | None  # None means float
    rows: list
    options: dict

    @property
    def is_float(self) -> bool:
        return self.field is None


def parse_field(text: Any) -> FieldSpec | None:
    if not isinstance(text, str):
        raise InvalidInputError(f"field: expected a string, got {text!r}")
    t = text.strip().lower()
    if t in ("rational", "q", "rationals"):
        return FieldSpec(0)
    if t == "float":
        return None
    if t.startswith("fp:"):
        try:
            p = int(t[3:])
        except ValueError:
            raise InvalidInputError(f"field: cannot parse modulus in {text!r}") from None
        if p < 2:
            raise InvalidInputError(f"field: modulus {p} is not prime")
        return FieldSpec(p)
    raise InvalidInputError(f"field: unknown field {text!r} (use rational, fp:<prime> or float)")


def _parse_exact(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InvalidInputError(f"{where}: exact coordinates must be integers or 'a/b' strings, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidInputError(f"{where}: cannot parse {x!r} as a rational") from None
    raise InvalidInputError(f"{where}: unsupported coordinate {x!r}")


def _parse_float(x: Any, where: str) -> float:
    if isinstance(x, bool):
        raise InvalidInputError(f"{where}: unsupported coordinate {x!r}")
    try:
        v = float(x)
    except (TypeError, ValueError):
        raise InvalidInputError(f"{where}: cannot parse {x!r} as a real number") from None
    if not math.isfinite(v):
        raise InvalidInputError(f"{where}: non-finite coordinate {x!r}")
    return v


def load_config(data: Any, field_override: str | None = None) -> Config:
    if not isinstance(data, dict):
        raise InvalidInputError("config: top level must be a JSON object")
    unknown = set(data) - _KNOWN_KEYS
    if unknown:
        raise InvalidInputError(f"config: unknown keys {sorted(unknown)}")
    field = parse_field(field_override if field_override is not None else data.get("field", "rational"))
    r = data.get("r")
    if r is not None and (not isinstance(r, int) or isinstance(r, bool) or r < 1):
        raise InvalidInputError(f"r: expected a positive integer, got {r!r}")
    options = {}
    for key in _OPTIONAL_INT:
        if key in data:
            v = data[key]
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidInputError(f"{key}: expected an integer, got {v!r}")
            options[key] = v
    if "eps" in data:
        options["eps"] = _parse_float(data["eps"], "eps")
    homogenize = data.get("homogenize", False)
    if not isinstance(homogenize, bool):
        raise InvalidInputError(f"homogenize: expected true/false, got {homogenize!r}")
    if homogenize and field is not None:
        raise InvalidInputError("homogenize: only allowed for float clouds")
    options["homogenize"] = homogenize

    raw = data.get("points", [])
    if not isinstance(raw, list):
        raise InvalidInputError("points: expected an array of coordinate arrays")
    rows = []
    width = None
    if r is not None:
        width = r if homogenize else r + 1
    for i, row in enumerate(raw):
        if not isinstance(row, list):
            raise InvalidInputError(f"points[{i}]: expected an array of coordinates")
        if width is None:
            width = len(row)
        if len(row) != width:
            raise InvalidInputError(f"points[{i}]: expected {width} coordinates, got {len(row)}")
        if field is None:
            vals = [_parse_float(x, f"points[{i}][{j}]") for j, x in enumerate(row)]
        else:
            vals = [_parse_exact(x, f"points[{i}][{j}]") for j, x in enumerate(row)]
            if field.characteristic:
                for j, x in enumerate(vals):
                    if x.denominator % field.characteristic == 0:
                        raise InvalidInputError(f"points[{i}][{j}]: denominator vanishes mod {field.characteristic}")
        if not homogenize and all(v == 0 for v in vals):
            raise InvalidInputError(f"points[{i}]: all coordinates are zero")
        rows.append(vals)
    if r is None and width is not None:
        r = width if homogenize else width - 1
    if r is not None and not homogenize and r < 1:
        raise InvalidInputError("points: need at least 2 homogeneous coordinates per row")
    return Config(r, field, rows, options)


def config_points(cfg: Config) -> PointConfig:
    if cfg.is_float:
        raise InvalidInputError("field: this command needs an exact field (rational or fp:<prime>)")
    if not cfg.rows:
        raise InvalidInputError("points: configuration must contain at least one point")
    return PointConfig.from_rows(cfg.rows, cfg.field)


def config_cloud(cfg: Config) -> FloatCloud:
    if not cfg.is_float:
        raise InvalidInputError("field: this command needs field 'float'")
    if not cfg.rows:
        raise InvalidInputError("points: cloud is empty")
    arr = np.array(cfg.rows, dtype=np.float64)
    return FloatCloud.from_affine(arr) if cfg.options.get("homogenize") else FloatCloud(arr)


def dump_config(cfg: PointConfig, **options) -> dict:
    """Serialize an exact configuration in the config-file format."""
    out = {"r": cfg.r, "field": str(cfg.field), "points": [point_json(p) for p in cfg]}
    out.update(options)
    return out


# -- results -------------------------------------------------------------


def point_json(p: ProjPoint) -> list[str]:
    return [str(x) for x in p.coords]


def form_json(F: HypersurfaceForm) -> dict:
    return {
        "r": F.r,
        "d": F.d,
        "monomial_order": "graded-lex, x0 > x1 > ... > xr",
        "coefficients": [{"exponent": list(e), "coeff": str(c)} for e, c in zip(F.basis.exponents, F.coeffs)],
    }


def membership_json(v: MembershipVerdict) -> dict:
    return {
        "member": v.member,
        "rank": v.rank,
        "kernel_dim": v.kernel_dim,
        "trivially_member": v.trivially_member,
        "m_requested": v.m_requested,
    }


def system_json(system: LinearSystem) -> dict:
    return {"d": system.d, "m": system.m, "forms": [form_json(F) for F in system.forms]}


def support_json(q: SingularSupport) -> dict:
    return {
        "indices": list(q.indices),
        "distinct_points": [point_json(p) for p in q.distinct_points],
        "has_duplicates": q.has_duplicates,
    }


def _tgen(t) -> Any:
    if isinstance(t, Capped):
        return "capped"
    return t


def classification_json(rep: ClassificationReport) -> dict:
    return {
        "verdict": rep.verdict.value,
        "reason": rep.reason.value if rep.reason else None,
        "kernel_dim": rep.kernel_dim,
        "membership": membership_json(rep.membership),
        "hypersurface": form_json(rep.hypersurface) if rep.hypersurface is not None else None,
        "singular_support": support_json(rep.q) if rep.q is not None else None,
        "regularity_of_q": rep.regularity_of_q if rep.regularity_of_q is not None else "not computed",
        "max_secant_of_q": rep.max_secant_of_q,
        "t_generality_of_q": _tgen(rep.t_generality_of_q),
        "sufficient_conditions_fired": [c.value for c in rep.sufficient_conditions_fired],
    }


def special_json(v: SpecialVerdict) -> dict:
    out = {
        "verdict": v.verdict.value,
        "reason": v.reason.value if v.reason else None,
        "kernel_dim": v.kernel_dim,
    }
    if v.quadric_rank is not None:
        out["quadric_rank"] = v.quadric_rank
    if v.inconsistent:
        out["inconsistent_input"] = True
    return out


def _float(x: float) -> Any:
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def fit_json(res: FitResult, exponents) -> dict:
    return {
        "d": res.d,
        "coefficients": [{"exponent": list(e), "coeff": float(c)} for e, c in zip(exponents, res.coeffs)],
        "residual": res.residual,
        "per_point": [float(x) for x in res.per_point],
        "condition": _float(res.condition),
        "underdetermined": res.underdetermined,
    }


def search_json(s: DegreeSearch, exponents) -> dict:
    return {
        "found": s.found,
        "degree": s.degree,
        "eps": s.eps,
        "trivial": s.trivial,
        "residuals": {str(k): v for k, v in s.residuals.items()},
        "fit": fit_json(s.fit, exponents) if s.fit else None,
        "note": "residual is the smallest singular value, a proxy rather than a distance",
    }


def multidegree_json(rep: MultidegreeReport) -> dict:
    return {
        "r": rep.r,
        "d": rep.d,
        "n": rep.n,
        "field": str(rep.field),
        "seed": rep.seed,
        "trials": rep.trials,
        "passes": rep.passes,
        "failures": rep.failures,
        "failed_trials": rep.failed_trials,
        "degenerate_resamples": rep.degenerate_resamples,
        "lines_per_trial": rep.lines,
        "expected_multidegree": rep.expected_value,
        "ok": rep.ok,
    }
