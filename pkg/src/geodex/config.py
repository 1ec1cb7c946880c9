"""Configuration and certificate files.

Structured JSON with strict schemas: unknown keys are rejected with a
location-bearing error, rationals travel as strings ("p/q" or a bare
integer) so nothing is ever rounded, and rotation numbers are either such
a string or an object {"decimal": "...", "err": "...", "irrational": bool}
with the irrational flag defaulting to true for decimals.  Serialization
is canonical (sorted keys, fixed layout), and parsing a serialized
configuration returns an equal configuration.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InputError
from .iteration import GeodesicRecord
from .jump import JumpCertificate
from .morse import CurvatureAssumption, SphereConfiguration
from .scalars import as_fraction, format_rational
from .symplectic import NormalFormDescriptor, RotationNumber

_CONFIG_KEYS = {"version", "n", "bumpy", "curvature_assumption", "geodesics", "output"}
_GEODESIC_KEYS = {"label", "initial_index", "descriptor"}
_DESCRIPTOR_KEYS = {"p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus",
                    "thetas", "alphas", "betas", "hyperbolic_dim"}
_ROTATION_KEYS = {"decimal", "err", "irrational"}
_CURVATURE_KEYS = {"pinch", "reversibility"}
_OUTPUT_KEYS = {"format"}
_CERT_KEYS = {"M", "N", "m", "xi", "eps", "delta"}

FORMATS = ("json", "tsv")


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise InputError(f"unknown key {key!r}", location=where)


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(f"missing required key {key!r}", location=where)
    return obj[key]


def _as_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"expected an integer, got {value!r}", location=where)
    return value


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(
            f"rationals must be strings or integers, got {value!r}", location=where)
    try:
        return as_fraction(value)
    except InputError as exc:
        raise InputError(str(exc), location=where) from exc


def _parse_rotation(value, where: str) -> RotationNumber:
    try:
        if isinstance(value, str):
            return RotationNumber.exact(_parse_rational(value, where))
        if isinstance(value, dict):
            _reject_unknown(value, _ROTATION_KEYS, where)
            text = _need(value, "decimal", where)
            err = _need(value, "err", where)
            irrational = value.get("irrational", True)
            if not isinstance(irrational, bool):
                raise InputError("'irrational' must be a boolean", location=where)
            if not isinstance(text, str) or not isinstance(err, str):
                raise InputError("'decimal' and 'err' must be strings", location=where)
            return RotationNumber.decimal(text, err, irrational)
    except InputError as exc:
        if exc.location:
            raise
        raise InputError(str(exc), location=where) from exc
    raise InputError(
        f"rotation numbers are 'p/q' strings or decimal objects, got {value!r}",
        location=where)


def _parse_descriptor(obj, where: str) -> NormalFormDescriptor:
    if not isinstance(obj, dict):
        raise InputError("descriptor must be an object", location=where)
    _reject_unknown(obj, _DESCRIPTOR_KEYS, where)
    counts = {}
    for key in ("p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus",
                "hyperbolic_dim"):
        counts[key] = _as_int(obj.get(key, 0), f"{where}.{key}")
    rotations = {}
    for key in ("thetas", "alphas", "betas"):
        raw = obj.get(key, [])
        if not isinstance(raw, list):
            raise InputError(f"{key} must be a list", location=where)
        rotations[key] = tuple(
            _parse_rotation(v, f"{where}.{key}[{i}]") for i, v in enumerate(raw))
    try:
        return NormalFormDescriptor(**counts, **rotations)
    except InputError as exc:
        if exc.location:
            raise
        raise InputError(str(exc), location=where) from exc


def parse_config(text: str) -> SphereConfiguration:
    cfg, _ = parse_config_document(text)
    return cfg


def parse_config_document(text: str) -> tuple[SphereConfiguration, str | None]:
    """Parse a configuration file; returns the configuration and the
    optional preferred output format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("top level must be an object")
    _reject_unknown(doc, _CONFIG_KEYS, "top level")
    version = _as_int(_need(doc, "version", "top level"), "version")
    if version != 1:
        raise InputError(f"unsupported version {version}; this engine reads version 1",
                         location="version")
    n = _as_int(_need(doc, "n", "top level"), "n")
    bumpy = doc.get("bumpy", False)
    if not isinstance(bumpy, bool):
        raise InputError("'bumpy' must be a boolean", location="bumpy")
    assumption = None
    if "curvature_assumption" in doc and doc["curvature_assumption"] is not None:
        raw = doc["curvature_assumption"]
        if not isinstance(raw, dict):
            raise InputError("curvature_assumption must be an object",
                             location="curvature_assumption")
        _reject_unknown(raw, _CURVATURE_KEYS, "curvature_assumption")
        assumption = CurvatureAssumption(
            _parse_rational(_need(raw, "pinch", "curvature_assumption"),
                            "curvature_assumption.pinch"),
            _parse_rational(_need(raw, "reversibility", "curvature_assumption"),
                            "curvature_assumption.reversibility"))
    raw_geos = _need(doc, "geodesics", "top level")
    if not isinstance(raw_geos, list):
        raise InputError("'geodesics' must be a list", location="geodesics")
    records = []
    for i, raw in enumerate(raw_geos):
        where = f"geodesics[{i}]"
        if not isinstance(raw, dict):
            raise InputError("each geodesic must be an object", location=where)
        _reject_unknown(raw, _GEODESIC_KEYS, where)
        label = _need(raw, "label", where)
        if not isinstance(label, str):
            raise InputError("label must be a string", location=where)
        index = _as_int(_need(raw, "initial_index", where), f"{where}.initial_index")
        descriptor = _parse_descriptor(_need(raw, "descriptor", where),
                                       f"{where}.descriptor")
        try:
            records.append(GeodesicRecord(label, index, descriptor))
        except InputError as exc:
            if exc.location:
                raise
            raise InputError(str(exc), location=where) from exc
    fmt = None
    if "output" in doc and doc["output"] is not None:
        raw = doc["output"]
        if not isinstance(raw, dict):
            raise InputError("'output' must be an object", location="output")
        _reject_unknown(raw, _OUTPUT_KEYS, "output")
        fmt = raw.get("format")
        if fmt is not None and fmt not in FORMATS:
            raise InputError(f"format must be one of {FORMATS}", location="output.format")
    try:
        cfg = SphereConfiguration(n, tuple(records), bumpy, assumption)
    except InputError as exc:
        if exc.location:
            raise
        raise InputError(str(exc), location="top level") from exc
    return cfg, fmt


def rotation_to_json(rho: RotationNumber):
    v = rho.value
    if v.is_exact:
        return format_rational(v.lo)
    center, err = v.center, v.width / 2
    text = _decimal_text(center)
    if text is None:
        # non-terminating center: truncate and absorb the slack into err
        text = _truncated_decimal(center, 36)
        err = err + abs(center - Fraction(text))
    return {"decimal": text, "err": _scientific_upper(err),
            "irrational": v.irrational}


def _decimal_text(x: Fraction) -> str | None:
    """Exact decimal form, or None when the denominator is not 2^a 5^b."""
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    places = max(twos, fives)
    if places == 0:
        return str(x.numerator)
    scaled = x.numerator * 10 ** places // x.denominator
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _truncated_decimal(x: Fraction, places: int) -> str:
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x.numerator * 10 ** places // x.denominator
    digits = str(scaled).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _scientific_upper(x: Fraction) -> str:
    """Shortest 'm e exp' form at or above x; exact when x is m * 10^exp
    with a three-digit mantissa."""
    if x <= 0:
        raise InputError("error bounds must be positive")
    exp = 0
    y = x
    while y < 1:
        y *= 10
        exp -= 1
    while y >= 10:
        y /= 10
        exp += 1
    mant_scaled = y * 1000
    ceil_scaled = -((-mant_scaled.numerator) // mant_scaled.denominator)
    mant = Fraction(ceil_scaled, 1000)
    if mant >= 10:
        mant /= 10
        exp += 1
    text = _decimal_text(mant)
    assert text is not None
    text = text.rstrip("0").rstrip(".") if "." in text else text
    return f"{text}e{exp}"


def descriptor_to_json(d: NormalFormDescriptor) -> dict:
    return {
        "p_minus": d.p_minus, "p_zero": d.p_zero, "p_plus": d.p_plus,
        "q_minus": d.q_minus, "q_zero": d.q_zero, "q_plus": d.q_plus,
        "thetas": [rotation_to_json(t) for t in d.thetas],
        "alphas": [rotation_to_json(a) for a in d.alphas],
        "betas": [rotation_to_json(b) for b in d.betas],
        "hyperbolic_dim": d.hyperbolic_dim,
    }


def config_to_json(cfg: SphereConfiguration, fmt: str | None = None) -> dict:
    doc = {
        "version": 1,
        "n": cfg.n,
        "bumpy": cfg.bumpy,
        "geodesics": [
            {"label": g.label, "initial_index": g.initial_index,
             "descriptor": descriptor_to_json(g.descriptor)}
            for g in cfg.geodesics
        ],
    }
    if cfg.curvature_assumption is not None:
        doc["curvature_assumption"] = {
            "pinch": format_rational(cfg.curvature_assumption.pinch),
            "reversibility": format_rational(cfg.curvature_assumption.reversibility),
        }
    if fmt is not None:
        doc["output"] = {"format": fmt}
    return doc


def serialize_config(cfg: SphereConfiguration, fmt: str | None = None) -> str:
    return json.dumps(config_to_json(cfg, fmt), indent=2, sort_keys=True) + "\n"


def parse_certificate(text: str) -> JumpCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("certificate must be an object")
    _reject_unknown(doc, _CERT_KEYS, "certificate")
    big_m = _as_int(_need(doc, "M", "certificate"), "certificate.M")
    n_val = _as_int(_need(doc, "N", "certificate"), "certificate.N")
    ms = _need(doc, "m", "certificate")
    xis = _need(doc, "xi", "certificate")
    if not isinstance(ms, list) or not isinstance(xis, list):
        raise InputError("'m' and 'xi' must be lists", location="certificate")
    ms = tuple(_as_int(v, f"certificate.m[{i}]") for i, v in enumerate(ms))
    xis = tuple(_as_int(v, f"certificate.xi[{i}]") for i, v in enumerate(xis))
    eps = _parse_rational(_need(doc, "eps", "certificate"), "certificate.eps")
    delta = _parse_rational(_need(doc, "delta", "certificate"), "certificate.delta")
    return JumpCertificate(big_m, n_val, ms, xis, eps, delta)


def certificate_to_json(cert: JumpCertificate) -> dict:
    return {
        "M": cert.M, "N": cert.N,
        "m": list(cert.m), "xi": list(cert.xi),
        "eps": format_rational(cert.eps),
        "delta": format_rational(cert.delta),
    }


def serialize_certificate(cert: JumpCertificate) -> str:
    return json.dumps(certificate_to_json(cert), indent=2, sort_keys=True) + "\n"
