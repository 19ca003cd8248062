"""Run-configuration files: JSON with decimal strings, outward-rounded on load."""

from __future__ import annotations

import json
from decimal import Decimal, InvalidOperation
from importlib import resources
from pathlib import Path

from .fourier import SymmetricSequence
from .interval import ComplexRect, Interval
from .verifier import ConfigError, ProofConfig

__all__ = ["RunConfig", "load_config", "parse_config", "default_config_path", "ConfigError"]

_DECIMAL_KEYS = ("K", "tau_hat", "tau0", "delta_tau", "beta1", "beta2")
_INT_KEYS = ("n_cutoff", "k_mid_max", "tail_N")
_OPTION_KEYS = ("workers", "csv_path")
_ALLOWED = set(_DECIMAL_KEYS) | set(_INT_KEYS) | set(_OPTION_KEYS) | {"c_hat", "linearization"}
_REQUIRED = ("K", "tau_hat", "delta_tau", "beta1", "beta2", "c_hat")


class RunConfig:
    """Parsed configuration: the proof inputs plus run options."""

    def __init__(self, proof: ProofConfig, workers: int | None = None, csv_path: str | None = None):
        self.proof = proof
        self.workers = workers
        self.csv_path = csv_path


def _decimal(key: str, value) -> Interval:
    if not isinstance(value, str):
        raise ConfigError(f"{key}: expected a decimal string, got {type(value).__name__}")
    try:
        Decimal(value)
    except InvalidOperation:
        raise ConfigError(f"{key}: not a decimal literal: {value!r}") from None
    return Interval.from_decimal(value)


def _coefficients(raw) -> SymmetricSequence:
    if not isinstance(raw, list) or not raw:
        raise ConfigError("c_hat: expected a non-empty list of [n, re, im]")
    pairs = {}
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 3 and isinstance(entry[0], int)):
            raise ConfigError(f"c_hat: malformed entry {entry!r}")
        n, re, im = entry
        if n < 0:
            raise ConfigError(f"c_hat: negative index {n}")
        if n in pairs:
            raise ConfigError(f"c_hat: duplicate index {n}")
        _decimal(f"c_hat[{n}].re", re)
        _decimal(f"c_hat[{n}].im", im)
        pairs[n] = (re, im)
    l = max(pairs)
    missing = [n for n in range(l + 1) if n not in pairs]
    if missing:
        raise ConfigError(f"c_hat: missing coefficient n={missing[0]}")
    if Decimal(pairs[0][1]) != 0:
        raise ConfigError("c_hat: c_0 must be real")
    coeffs = [ComplexRect.from_decimal(*pairs[n]) for n in range(l + 1)]
    return SymmetricSequence(coeffs)


def parse_config(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = sorted(set(doc) - _ALLOWED)
    if unknown:
        raise ConfigError(f"unknown key: {unknown[0]}")
    for key in _REQUIRED:
        if key not in doc:
            if key == "c_hat":
                raise ConfigError("missing coefficient list c_hat")
            raise ConfigError(f"missing key: {key}")
    kw = {}
    for key in _DECIMAL_KEYS:
        if key in doc:
            kw[key] = _decimal(key, doc[key])
    for key in _INT_KEYS:
        if key in doc:
            if not isinstance(doc[key], int) or isinstance(doc[key], bool):
                raise ConfigError(f"{key}: expected an integer")
            kw[key] = doc[key]
    kw["c_hat"] = _coefficients(doc["c_hat"])
    if kw["c_hat"].l < 1 or kw["c_hat"][1].is_zero():
        raise ConfigError("c_hat: missing coefficient n=1")
    if "linearization" in doc:
        kw["linearization"] = doc["linearization"]
    source = {k: doc[k] for k in doc if k not in _OPTION_KEYS}
    proof = ProofConfig(source=source, **kw)
    proof.validate()
    workers = doc.get("workers")
    if workers is not None and (not isinstance(workers, int) or workers < 1):
        raise ConfigError("workers: expected a positive integer")
    return RunConfig(proof, workers, doc.get("csv_path"))


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read configuration: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from None
    return parse_config(doc)


def default_config_path() -> Path:
    return Path(str(resources.files("ddeproof") / "data" / "bundled.json"))
