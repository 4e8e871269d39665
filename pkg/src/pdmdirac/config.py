"""Model configuration files: a flat, typed key-value format.

Grammar (one assignment per line):

    # comment (blank lines ignored)
    section.key = value

Keys (all required unless noted):

    family.class   one of: omega_negative, omega_zero_plus, omega_zero_minus,
                   omega_positive
    family.b       real coupling of the pseudoscalar partner
    family.c       real center of the coordinate map
    family.u       one of: identity, artanh, arccoth
    labels.k       real >= 0 representation label
    labels.s       real state label, s - k a non-negative integer
    dirac.A        real > 0 constancy constant m v_f^2
    grid.min       real
    grid.max       real
    grid.n         integer >= 16
    grid.margin    real > 0, pulled in at singular endpoints only
    ordering       bendaniel_duke | zhu_kroemer | mustafa_mazharimousavi | custom
    ordering.eta   \
    ordering.beta   } required iff ordering = custom; must sum to -1
    ordering.gamma /

Unknown keys are errors (never silently ignored); every diagnostic carries
the offending line number.
"""

from __future__ import annotations

from pathlib import Path

from .algebra import FamilyClass
from .errors import ConfigError, DomainError, OrderingViolationError
from .models import ModelDefinition, U_KINDS, _family_domain, ordering_from_name

_REQUIRED = (
    "family.class", "family.b", "family.c", "family.u",
    "labels.k", "labels.s", "dirac.A",
    "grid.min", "grid.max", "grid.n", "grid.margin",
    "ordering",
)
_OPTIONAL = ("ordering.eta", "ordering.beta", "ordering.gamma")

_CLASSES = {c.value: c for c in FamilyClass}
_ORDERING_NAMES = ("bendaniel_duke", "zhu_kroemer", "mustafa_mazharimousavi", "custom")


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Raw key -> (value string, line number) mapping with syntax checking."""
    entries: dict[str, tuple[str, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not key or not value:
            raise ConfigError(f"{source}:{lineno}: empty key or value")
        if key not in _REQUIRED and key not in _OPTIONAL:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in entries:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        entries[key] = (value, lineno)
    return entries


def _take(entries, key, source, conv, what):
    value, lineno = entries[key]
    try:
        return conv(value)
    except ValueError as exc:
        raise ConfigError(f"{source}:{lineno}: {key} must be {what}, "
                          f"got {value!r}") from exc


def load_config(path, overrides: dict | None = None) -> tuple[ModelDefinition, dict]:
    """Parse and validate a config file; returns (definition, raw-echo dict).

    `overrides` may replace grid.n and grid.margin (the CLI's global flags).
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    source = str(path)
    entries = parse_config_text(text, source)
    missing = [k for k in _REQUIRED if k not in entries]
    if missing:
        raise ConfigError(f"{source}: missing required keys: {', '.join(missing)}")

    cls_name = _take(entries, "family.class", source, str, "a family class")
    if cls_name not in _CLASSES:
        lineno = entries["family.class"][1]
        raise ConfigError(f"{source}:{lineno}: family.class must be one of "
                          f"{sorted(_CLASSES)}, got {cls_name!r}")
    u_kind = _take(entries, "family.u", source, str, "a map name")
    if u_kind not in U_KINDS:
        lineno = entries["family.u"][1]
        raise ConfigError(f"{source}:{lineno}: family.u must be one of "
                          f"{U_KINDS}, got {u_kind!r}")
    ordering_name = _take(entries, "ordering", source, str, "an ordering name")
    if ordering_name not in _ORDERING_NAMES:
        lineno = entries["ordering"][1]
        raise ConfigError(f"{source}:{lineno}: ordering must be one of "
                          f"{_ORDERING_NAMES}, got {ordering_name!r}")
    extra = {}
    if ordering_name == "custom":
        for part in _OPTIONAL:
            if part not in entries:
                raise ConfigError(f"{source}: custom ordering requires {part}")
            extra[part.split(".")[1]] = _take(entries, part, source, float, "a real")
    else:
        present = [p for p in _OPTIONAL if p in entries]
        if present:
            lineno = entries[present[0]][1]
            raise ConfigError(f"{source}:{lineno}: {present[0]} is only valid "
                              "with ordering = custom")
    try:
        ordering = ordering_from_name(ordering_name, **extra)
    except OrderingViolationError as exc:
        raise ConfigError(f"{source}: {exc}") from exc

    n = _take(entries, "grid.n", source, int, "an integer")
    overrides = overrides or {}
    if overrides.get("grid_n") is not None:
        n = int(overrides["grid_n"])
    margin = _take(entries, "grid.margin", source, float, "a real")
    if overrides.get("margin") is not None:
        margin = float(overrides["margin"])

    try:
        defn = ModelDefinition(
            family_class=_CLASSES[cls_name],
            b=_take(entries, "family.b", source, float, "a real"),
            c=_take(entries, "family.c", source, float, "a real"),
            u_kind=u_kind,
            k=_take(entries, "labels.k", source, float, "a real"),
            s=_take(entries, "labels.s", source, float, "a real"),
            A=_take(entries, "dirac.A", source, float, "a real"),
            x_min=_take(entries, "grid.min", source, float, "a real"),
            x_max=_take(entries, "grid.max", source, float, "a real"),
            n=n, margin=margin, ordering=ordering, ordering_name=ordering_name,
        )
    except DomainError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    try:
        _family_domain(defn)   # map/domain pairing is part of the schema
    except DomainError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    echo = {k: v for k, (v, _) in sorted(entries.items())}
    if overrides.get("grid_n") is not None:
        echo["grid.n"] = str(n)
    if overrides.get("margin") is not None:
        echo["grid.margin"] = repr(margin)
    return defn, echo
