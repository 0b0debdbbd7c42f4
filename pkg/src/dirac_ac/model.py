"""Backgrounds, physical parameters, quantum numbers and the angular parameter.

Natural units (hbar = c = 1) throughout.  The dipole-line coupling is stored
as the product ``mu_lambda``; the Aharonov-Casher phase is ``2*pi*mu_lambda``
and its sign is the sign of ``mu_lambda``.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "BackgroundKind",
    "Background",
    "BackgroundError",
    "PhysicalParams",
    "QuantumNumbers",
    "ZetaValue",
    "ac_phase",
    "effective_zeta",
    "validate_background",
    "format_float",
    "parse_spin",
    "zeta_to_config",
    "zeta_from_config",
]

ZetaValue = float


def format_float(value: float) -> str:
    """17 significant digits, ``.`` separator, independent of locale."""
    return format(float(value), ".17g")


class BackgroundError(ValueError):
    """Background parameters outside the spacetime's allowed range."""


class BackgroundKind(str, Enum):
    MINKOWSKI = "minkowski"
    COSMIC_STRING = "string"
    COSMIC_DISLOCATION = "dislocation"

    @classmethod
    def parse(cls, text: str) -> "BackgroundKind":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("-", "_")
        aliases = {
            "minkowski": cls.MINKOWSKI,
            "flat": cls.MINKOWSKI,
            "string": cls.COSMIC_STRING,
            "cosmic_string": cls.COSMIC_STRING,
            "dislocation": cls.COSMIC_DISLOCATION,
            "cosmic_dislocation": cls.COSMIC_DISLOCATION,
        }
        try:
            return aliases[key]
        except KeyError:
            raise BackgroundError(f"unknown background {text!r}") from None


def validate_background(bg: "Background") -> "Background":
    """Return ``bg`` unchanged, or raise :class:`BackgroundError`."""
    eta, chi = bg.eta, bg.chi
    if not (math.isfinite(eta) and math.isfinite(chi)):
        raise BackgroundError("eta and chi must be finite")
    if eta <= 0.0 or eta > 1.0:
        raise BackgroundError(f"eta out of range (0, 1]: {eta!r}")
    if bg.kind is BackgroundKind.MINKOWSKI and eta != 1.0:
        raise BackgroundError(f"eta must be 1 for minkowski, got {eta!r}")
    if bg.kind is not BackgroundKind.COSMIC_DISLOCATION and chi != 0.0:
        raise BackgroundError(f"chi must be 0 for {bg.kind.value}, got {chi!r}")
    return bg


@dataclass(frozen=True)
class Background:
    kind: BackgroundKind = BackgroundKind.MINKOWSKI
    eta: float = 1.0
    chi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", BackgroundKind.parse(self.kind))
        object.__setattr__(self, "eta", float(self.eta))
        object.__setattr__(self, "chi", float(self.chi))
        validate_background(self)

    @classmethod
    def minkowski(cls) -> "Background":
        return cls(BackgroundKind.MINKOWSKI)

    @classmethod
    def cosmic_string(cls, eta: float) -> "Background":
        return cls(BackgroundKind.COSMIC_STRING, eta)

    @classmethod
    def cosmic_dislocation(cls, eta: float, chi: float) -> "Background":
        return cls(BackgroundKind.COSMIC_DISLOCATION, eta, chi)

    def to_config(self) -> dict[str, str]:
        return {
            "background": self.kind.value,
            "eta": format_float(self.eta),
            "chi": format_float(self.chi),
        }

    @classmethod
    def from_config(cls, cfg: Mapping[str, str]) -> "Background":
        kind = BackgroundKind.parse(cfg.get("background", "minkowski"))
        eta = float(cfg.get("eta", 1.0))
        chi = float(cfg.get("chi", 0.0))
        return cls(kind, eta, chi)


@dataclass(frozen=True)
class PhysicalParams:
    m: float = 1.0
    omega: float = 1.0
    mu_lambda: float = 0.0
    k: float = 0.0

    def __post_init__(self):
        for name in ("m", "omega", "mu_lambda", "k"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.m <= 0.0:
            raise ValueError(f"mass must be positive, got {self.m!r}")
        if self.omega <= 0.0:
            raise ValueError(f"omega must be positive, got {self.omega!r}")

    @property
    def m_omega(self) -> float:
        return self.m * self.omega

    def replace(self, **changes) -> "PhysicalParams":
        values = {"m": self.m, "omega": self.omega, "mu_lambda": self.mu_lambda, "k": self.k}
        values.update(changes)
        return PhysicalParams(**values)

    def to_config(self) -> dict[str, str]:
        return {
            "mass": format_float(self.m),
            "omega": format_float(self.omega),
            "mu_lambda": format_float(self.mu_lambda),
            "k": format_float(self.k),
        }

    @classmethod
    def from_config(cls, cfg: Mapping[str, str]) -> "PhysicalParams":
        return cls(
            m=float(cfg.get("mass", 1.0)),
            omega=float(cfg.get("omega", 1.0)),
            mu_lambda=float(cfg.get("mu_lambda", 0.0)),
            k=float(cfg.get("k", 0.0)),
        )


def parse_spin(text) -> int:
    s = str(text).strip()
    if s in ("+1", "1", "+"):
        return 1
    if s in ("-1", "-"):
        return -1
    raise ValueError(f"spin must be +1 or -1, got {text!r}")


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    """Radial ``n``, orbital ``l`` (j = l + 1/2) and spin projection ``s``."""

    n: int
    l: int
    s: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError(f"n must be a non-negative integer, got {self.n!r}")
        if int(self.l) != self.l:
            raise ValueError(f"l must be an integer, got {self.l!r}")
        if self.s not in (1, -1):
            raise ValueError(f"s must be +1 or -1, got {self.s!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "l", int(self.l))
        object.__setattr__(self, "s", int(self.s))

    def to_config(self) -> dict[str, str]:
        return {"n": str(self.n), "l": str(self.l), "spin": "+1" if self.s > 0 else "-1"}

    @classmethod
    def from_config(cls, cfg: Mapping[str, str]) -> "QuantumNumbers":
        return cls(int(cfg.get("n", 0)), int(cfg.get("l", 0)), parse_spin(cfg.get("spin", "+1")))


def zeta_to_config(zeta: ZetaValue) -> dict[str, str]:
    return {"zeta": format_float(zeta)}


def zeta_from_config(cfg: Mapping[str, str]) -> ZetaValue:
    return float(cfg["zeta"])


def ac_phase(mu_lambda: float) -> float:
    """Aharonov-Casher phase ``2*pi*mu_lambda`` in radians."""
    return 2.0 * math.pi * mu_lambda


def effective_zeta(bg: Background, qn: QuantumNumbers, params: PhysicalParams) -> ZetaValue:
    """Angular parameter controlling the centrifugal term of the radial equation.

    One expression serves all three backgrounds::

        zeta = l + (1 - s)/2 + s (1 - eta)/2 - chi k + s mu_lambda

    Minkowski has eta = 1, chi = 0 and the cosmic string chi = 0, so the
    extra terms are exact zeros and the reductions dislocation(chi=0) ->
    string and string(eta=1) -> Minkowski hold bit for bit.
    """
    validate_background(bg)
    s = qn.s
    return qn.l + 0.5 * (1 - s) + 0.5 * s * (1.0 - bg.eta) - bg.chi * params.k + s * params.mu_lambda
