"""
Domain types shared by the whole package: network statistics, channel draws,
precoder allocations, SNR points and outage thresholds.
"""
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


NORM_TOLERANCE = 1e-9


class LinkId(Enum):
    """
    The six directed links of the two-source / two-destination network.
    The declaration order is the canonical link order (CLI ``--gains``,
    config keys, RNG substream ordinals).
    """
    S1_S2 = "s1-s2"
    S2_S1 = "s2-s1"
    S1_D1 = "s1-d1"
    S1_D2 = "s1-d2"
    S2_D1 = "s2-d1"
    S2_D2 = "s2-d2"

    @property
    def ordinal(self) -> int:
        return _LINK_ORDINALS[self]


LINKS = tuple(LinkId)
_LINK_ORDINALS = {link: i for i, link in enumerate(LINKS)}

# User relabeling S1<->S2, D1<->D2 expressed on link ordinals.
LINK_SWAP = (1, 0, 5, 4, 3, 2)


class StrategyId(Enum):
    RDF = "rdf"
    PDF = "pdf"
    LNC_RDF = "lnc-rdf"
    DPC_NC_PDF = "dpc-nc-pdf"

    @classmethod
    def parse(cls, name: str) -> "StrategyId":
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(s.value for s in cls)
            raise ValueError(f"Unknown strategy '{name}', choose one of: {valid}") from None


STRATEGIES = tuple(StrategyId)


class NormMode(Enum):
    EQUALITY = "equality"
    INEQUALITY = "inequality"


class DpcOrdering(Enum):
    """Destination whose codeword a source encodes second (interference free)."""
    FAVOR_D1 = "d1"
    FAVOR_D2 = "d2"

    def flipped(self) -> "DpcOrdering":
        return DpcOrdering.FAVOR_D2 if self is DpcOrdering.FAVOR_D1 else DpcOrdering.FAVOR_D1


@dataclass(frozen=True)
class FadingProfile:
    """
    Rayleigh variances of the six links (canonical link order) and the
    receiver noise variance.
    """
    variances: tuple = (1.0,) * 6
    noise_variance: float = 1.0

    def __post_init__(self):
        variances = tuple(float(v) for v in self.variances)
        if len(variances) != len(LINKS):
            raise ValueError(f"Expected {len(LINKS)} link variances, got {len(variances)}")
        for link, var in zip(LINKS, variances):
            if not math.isfinite(var) or var <= 0:
                raise ValueError(f"Variance of link {link.value} must be positive, got {var}")
        if not math.isfinite(self.noise_variance) or self.noise_variance <= 0:
            raise ValueError(f"Noise variance must be positive, got {self.noise_variance}")
        object.__setattr__(self, "variances", variances)
        object.__setattr__(self, "noise_variance", float(self.noise_variance))

    @classmethod
    def symmetric(cls, variance: float = 1.0, noise_variance: float = 1.0) -> "FadingProfile":
        return cls((variance,) * len(LINKS), noise_variance)

    @classmethod
    def from_mapping(cls, variances: dict, noise_variance: float = 1.0) -> "FadingProfile":
        return cls(tuple(variances.get(link, 1.0) for link in LINKS), noise_variance)

    def variance(self, link: LinkId) -> float:
        return self.variances[link.ordinal]

    @property
    def is_symmetric(self) -> bool:
        return all(v == self.variances[0] for v in self.variances)


@dataclass(frozen=True)
class ChannelRealization:
    """One draw of the six complex link gains, canonical link order."""
    gains: tuple

    def __post_init__(self):
        gains = tuple(complex(h) for h in self.gains)
        if len(gains) != len(LINKS):
            raise ValueError(f"Expected {len(LINKS)} link gains, got {len(gains)}")
        object.__setattr__(self, "gains", gains)

    @classmethod
    def from_gain2(cls, gain2) -> "ChannelRealization":
        """
        Builds a realization with real nonnegative gains whose squared
        moduli are the given power gains.
        """
        values = [float(g) for g in gain2]
        for link, g in zip(LINKS, values):
            if not math.isfinite(g) or g < 0:
                raise ValueError(f"Power gain of link {link.value} must be >= 0, got {g}")
        return cls(tuple(complex(math.sqrt(g), 0.0) for g in values))

    @classmethod
    def zero(cls) -> "ChannelRealization":
        return cls((0j,) * len(LINKS))

    def gain(self, link: LinkId) -> complex:
        return self.gains[link.ordinal]

    def gain2(self, link: LinkId) -> float:
        h = self.gains[link.ordinal]
        return h.real * h.real + h.imag * h.imag

    def gain2_vector(self) -> np.ndarray:
        return np.array([self.gain2(link) for link in LINKS], dtype=float)

    def swapped(self) -> "ChannelRealization":
        return ChannelRealization(tuple(self.gains[i] for i in LINK_SWAP))


@dataclass(frozen=True)
class SnrPoint:
    """Linear input SNR rho = 2P / (W sigma^2)."""
    rho: float

    def __post_init__(self):
        if not math.isfinite(self.rho) or self.rho < 0:
            raise ValueError(f"SNR must be finite and >= 0, got {self.rho}")
        object.__setattr__(self, "rho", float(self.rho))

    @classmethod
    def from_db(cls, snr_db: float) -> "SnrPoint":
        return db_to_linear(snr_db)

    @property
    def db(self) -> float:
        return 10.0 * math.log10(self.rho) if self.rho > 0 else -math.inf


def db_to_linear(snr_db: float) -> SnrPoint:
    if not math.isfinite(snr_db):
        raise ValueError(f"SNR in dB must be finite, got {snr_db}")
    return SnrPoint(10.0 ** (snr_db / 10.0))


@dataclass(frozen=True)
class PowerAllocation:
    """
    Magnitudes of the row precoders F_1 = [f11, f12] and F_2 = [f21, f22].
    f_i1 weighs the codeword of user 1, f_i2 the codeword of user 2.
    """
    f11: float
    f12: float
    f21: float
    f22: float

    def __post_init__(self):
        for name in ("f11", "f12", "f21", "f22"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value < 0 or value > 1 + NORM_TOLERANCE:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
            object.__setattr__(self, name, min(value, 1.0))
        for i, norm in ((1, self.norm1), (2, self.norm2)):
            if norm > 1 + NORM_TOLERANCE:
                raise ValueError(f"Precoder F_{i} exceeds the power constraint: |F_{i}|^2 = {norm}")

    @classmethod
    def from_angles(cls, theta1: float, theta2: float) -> "PowerAllocation":
        """Unit-norm precoders F_i = [cos theta_i, sin theta_i]."""
        return cls(*_unit_row(theta1), *_unit_row(theta2))

    @classmethod
    def from_polar(cls, power1: float, theta1: float, power2: float, theta2: float) -> "PowerAllocation":
        """Precoders of squared norm power_i, split by angle theta_i."""
        r1, r2 = math.sqrt(power1), math.sqrt(power2)
        c1, s1 = _unit_row(theta1)
        c2, s2 = _unit_row(theta2)
        return cls(r1 * c1, r1 * s1, r2 * c2, r2 * s2)

    @classmethod
    def from_vector(cls, values) -> "PowerAllocation":
        return cls(*(float(v) for v in values))

    @classmethod
    def tdma(cls) -> "PowerAllocation":
        # no relaying: each source only sends its own codeword
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def equal_split(cls) -> "PowerAllocation":
        return cls.from_angles(math.pi / 4, math.pi / 4)

    @classmethod
    def corners(cls) -> tuple:
        rows = ((1.0, 0.0), (0.0, 1.0))
        return tuple(cls(*r1, *r2) for r1 in rows for r2 in rows)

    @property
    def norm1(self) -> float:
        return self.f11 ** 2 + self.f12 ** 2

    @property
    def norm2(self) -> float:
        return self.f21 ** 2 + self.f22 ** 2

    def satisfies(self, mode: NormMode, tol: float = NORM_TOLERANCE) -> bool:
        if mode is NormMode.EQUALITY:
            return abs(self.norm1 - 1) <= tol and abs(self.norm2 - 1) <= tol
        return self.norm1 <= 1 + tol and self.norm2 <= 1 + tol

    def as_vector(self) -> np.ndarray:
        return np.array([self.f11, self.f12, self.f21, self.f22], dtype=float)

    def swapped(self) -> "PowerAllocation":
        return PowerAllocation(self.f22, self.f21, self.f12, self.f11)


def _unit_row(theta: float) -> tuple:
    # clip rounding noise so that cos(pi/2) does not come out negative
    return max(math.cos(theta), 0.0), max(math.sin(theta), 0.0)


@dataclass(frozen=True)
class DpcOrderingPair:
    pi1: DpcOrdering = DpcOrdering.FAVOR_D1
    pi2: DpcOrdering = DpcOrdering.FAVOR_D1

    @classmethod
    def all_pairs(cls) -> tuple:
        return ORDERING_PAIRS

    @classmethod
    def parse(cls, text: str) -> "DpcOrderingPair":
        parts = [p.strip().lower() for p in text.split(",")]
        if len(parts) != 2:
            raise ValueError(f"Ordering needs two comma separated entries, got '{text}'")
        try:
            return cls(DpcOrdering(parts[0]), DpcOrdering(parts[1]))
        except ValueError:
            raise ValueError(f"Ordering entries must be d1 or d2, got '{text}'") from None

    def swapped(self) -> "DpcOrderingPair":
        return DpcOrderingPair(self.pi2.flipped(), self.pi1.flipped())

    def __str__(self):
        return f"{self.pi1.value},{self.pi2.value}"


ORDERING_PAIRS = tuple(DpcOrderingPair(p1, p2) for p1 in DpcOrdering for p2 in DpcOrdering)


@dataclass(frozen=True)
class OutageSpec:
    """
    Target rate r (b/s) over bandwidth W (Hz). Orthogonal schemes use half of
    the degrees of freedom, hence the threshold R = r / (W/2) = 2 R'.
    """
    target_rate: float
    bandwidth: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.target_rate) or self.target_rate <= 0:
            raise ValueError(f"Target rate must be positive, got {self.target_rate}")
        if not math.isfinite(self.bandwidth) or self.bandwidth <= 0:
            raise ValueError(f"Bandwidth must be positive, got {self.bandwidth}")
        object.__setattr__(self, "target_rate", float(self.target_rate))
        object.__setattr__(self, "bandwidth", float(self.bandwidth))

    @property
    def threshold_nc(self) -> float:
        return self.target_rate / self.bandwidth

    @property
    def threshold_orthogonal(self) -> float:
        return 2.0 * self.threshold_nc

    def threshold(self, strategy: StrategyId) -> float:
        if strategy in (StrategyId.RDF, StrategyId.PDF):
            return self.threshold_orthogonal
        return self.threshold_nc
