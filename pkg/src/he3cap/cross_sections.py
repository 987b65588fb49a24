"""Capture cross-sections on polarized helium-3, closed forms and oracle.

Two independent evaluation routes are kept side by side on purpose:

* closed forms: the per-channel brackets in the pairwise polarization
  products, coded term by term (including the interference coefficients
  6 - 4*sqrt(2) and 3 + 4*sqrt(2) of the j''=1 channel);
* an oracle that performs the full substate sum over occupation
  probabilities and Clebsch-Gordan amplitudes, with coherent addition of
  the two intermediate total-angular-momentum paths.

Everything is exact rational / Q(sqrt(2)) arithmetic, so agreement between
the two routes is decided by field equality, never by tolerance.  The
reconciliation report produced here is a first-class output: it is how the
package adjudicates what the coupling algebra actually supports.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .angular import HalfInt, cg
from .errors import DomainError, ModeMismatchError
from .exactnum import QuadRational, RationalLike, as_fraction, sqrt_product
from .polarization import PolarizationTriple, oam_distribution, spin_half_distribution


class Parity(enum.Enum):
    EVEN = "+"
    ODD = "-"


class CaptureMode(str, enum.Enum):
    ORDINARY = "ordinary"
    OAM = "oam"


@dataclass(frozen=True)
class Channel:
    """A compound-nucleus channel labeled by total angular momentum and parity."""

    j_final: HalfInt
    parity: Parity

    @property
    def label(self) -> str:
        return f"{self.j_final}{self.parity.value}"

    def __str__(self) -> str:
        return self.label


SINGLET = Channel(HalfInt(0), Parity.EVEN)
TRIPLET = Channel(HalfInt(2), Parity.EVEN)
ORDINARY_CHANNELS: tuple[Channel, ...] = (SINGLET, TRIPLET)

OAM_CHANNELS: tuple[Channel, ...] = (
    Channel(HalfInt(0), Parity.ODD),
    Channel(HalfInt(2), Parity.ODD),
    Channel(HalfInt(4), Parity.ODD),
)


def channels_for(mode: CaptureMode) -> tuple[Channel, ...]:
    """Channels of a capture mode, ordered by ascending j."""
    return ORDINARY_CHANNELS if mode is CaptureMode.ORDINARY else OAM_CHANNELS


def channel_by_label(label: str) -> Channel:
    for channel in ORDINARY_CHANNELS + OAM_CHANNELS:
        if channel.label == label:
            return channel
    raise DomainError(f"unknown channel label {label!r}")


@dataclass(frozen=True)
class CaptureModel:
    """Per-channel strength constants (squared nuclear matrix elements).

    The strengths are arbitrary-unit nonnegative rationals; everything this
    package computes is relative to them.  Ordering follows channels_for().
    """

    mode: CaptureMode
    strengths: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        strengths = tuple(as_fraction(value) for value in self.strengths)
        object.__setattr__(self, "strengths", strengths)
        expected = len(channels_for(self.mode))
        if len(strengths) != expected:
            raise DomainError(
                f"{self.mode.value} mode needs {expected} strengths, got {len(strengths)}"
            )
        for value in strengths:
            if value < 0:
                raise DomainError(f"strength constants must be nonnegative, got {value}")

    @classmethod
    def uniform(cls, mode: CaptureMode, strength: RationalLike = 1) -> CaptureModel:
        count = len(channels_for(mode))
        return cls(mode, (as_fraction(strength),) * count)

    @classmethod
    def ordinary(cls, singlet: RationalLike = 1, triplet: RationalLike = 1) -> CaptureModel:
        return cls(CaptureMode.ORDINARY, (as_fraction(singlet), as_fraction(triplet)))

    @classmethod
    def oam(
        cls, k0: RationalLike = 1, k1: RationalLike = 1, k2: RationalLike = 1
    ) -> CaptureModel:
        return cls(CaptureMode.OAM, (as_fraction(k0), as_fraction(k1), as_fraction(k2)))

    @property
    def channels(self) -> tuple[Channel, ...]:
        return channels_for(self.mode)

    def strength(self, channel: Channel) -> Fraction:
        try:
            index = self.channels.index(channel)
        except ValueError:
            raise ModeMismatchError(
                f"channel {channel.label} does not belong to {self.mode.value} mode"
            ) from None
        return self.strengths[index]


@dataclass(frozen=True)
class ChannelCrossSection:
    channel: Channel
    value: QuadRational


# Spins involved in the capture, as twice-values.
_NEUTRON_SPIN = HalfInt(1)
_HE3_SPIN = HalfInt(1)
_OAM_MOMENTUM = HalfInt(2)
# The neutron's spin and orbital momentum couple to j' = 1/2 or 3/2.
_COUPLED_MOMENTA = (HalfInt(1), HalfInt(3))

# Bracket coefficients of the j''=1 channel; the sqrt(2) parts come from
# interference between the two coupled neutron states.
_J1_SPIN_OAM = QuadRational.from_rational(3)
_J1_SPIN_NUCLEAR = QuadRational(Fraction(6), Fraction(-4))
_J1_OAM_NUCLEAR = QuadRational(Fraction(3), Fraction(4))


def _require_mode(model: CaptureModel, mode: CaptureMode, operation: str) -> None:
    if model.mode is not mode:
        raise ModeMismatchError(f"{operation} requires a {mode.value}-mode model")


def ordinary_closed_form(
    channel: Channel, pol: PolarizationTriple, model: CaptureModel
) -> ChannelCrossSection:
    """Closed-form cross-section for an ordinary (s-wave, no OAM) neutron.

    Triplet: K/4 * (3 + p*P_N); singlet: K/4 * (1 - p*P_N).  P_L is ignored.
    """
    _require_mode(model, CaptureMode.ORDINARY, "ordinary_closed_form")
    strength = model.strength(channel)
    spin_product = pol.p * pol.pn
    bracket = 3 + spin_product if channel == TRIPLET else 1 - spin_product
    return ChannelCrossSection(channel, QuadRational.from_rational(strength * bracket / 4))


def oam_closed_form(
    channel: Channel, pol: PolarizationTriple, model: CaptureModel
) -> ChannelCrossSection:
    """Closed-form cross-section for an L=1 OAM neutron channel.

    The brackets depend on the polarizations only through their pairwise
    products p*P_L, p*P_N, and P_L*P_N.
    """
    _require_mode(model, CaptureMode.OAM, "oam_closed_form")
    strength = model.strength(channel)
    spin_oam = 1 - pol.p * pol.pl
    spin_nuclear = 1 - pol.p * pol.pn
    oam_nuclear = 1 - pol.pl * pol.pn

    twice_j = channel.j_final.twice
    if twice_j == 4:
        bracket = QuadRational.from_rational(24 - 5 * spin_oam - 4 * spin_nuclear - 5 * oam_nuclear)
        value = bracket * Fraction(strength, 24)
    elif twice_j == 2:
        bracket = (
            _J1_SPIN_OAM * spin_oam
            + _J1_SPIN_NUCLEAR * spin_nuclear
            + _J1_OAM_NUCLEAR * oam_nuclear
        )
        value = bracket * Fraction(strength, 24)
    elif twice_j == 0:
        bracket = QuadRational.from_rational(
            1 - pol.p * pol.pl + pol.p * pol.pn - pol.pl * pol.pn
        )
        value = bracket * Fraction(strength, 12)
    else:
        raise ModeMismatchError(f"channel {channel.label} is not an OAM capture channel")
    return ChannelCrossSection(channel, value)


def ordinary_oracle(
    channel: Channel, pol: PolarizationTriple, model: CaptureModel
) -> ChannelCrossSection:
    """Brute-force substate sum for ordinary capture.

    sigma = K * sum over (m_N, mu) of p(m_N) p(mu) |<j' m'|1/2 m_N; 1/2 mu>|^2.
    """
    _require_mode(model, CaptureMode.ORDINARY, "ordinary_oracle")
    if channel not in ORDINARY_CHANNELS:
        raise ModeMismatchError(f"channel {channel.label} is not an ordinary capture channel")
    nuclear = spin_half_distribution(pol.pn)
    spin = spin_half_distribution(pol.p)
    j_final = channel.j_final

    accumulated = Fraction(0)
    for (m_nuclear, w_nuclear), (m_spin, w_spin) in product(nuclear, spin):
        weight = w_nuclear * w_spin
        if weight == 0:
            continue
        m_final = m_nuclear + m_spin
        if abs(m_final.twice) > j_final.twice:
            continue
        amplitude = cg(_HE3_SPIN, m_nuclear, _NEUTRON_SPIN, m_spin, j_final, m_final)
        accumulated += weight * amplitude.square()
    value = QuadRational.from_rational(model.strength(channel) * accumulated)
    return ChannelCrossSection(channel, value)


def oam_oracle(
    channel: Channel, pol: PolarizationTriple, model: CaptureModel
) -> ChannelCrossSection:
    """Brute-force substate sum for OAM capture, with path interference.

    For each occupied (m_N, m_L, mu) the amplitude into the compound state
    (j'', m'') adds the j' = 1/2 and j' = 3/2 routes coherently:

        A = sum over j' of <j'' m''|j' m'; 1/2 m_N> <j' m'|1 m_L; 1/2 mu>

    and sigma = K * sum of p(m_N) p(m_L) p(mu) |A|^2.  The |A|^2 expansion
    runs through sqrt_product, so the result stays in Q + Q*sqrt(2) exactly.
    """
    _require_mode(model, CaptureMode.OAM, "oam_oracle")
    if channel not in OAM_CHANNELS:
        raise ModeMismatchError(f"channel {channel.label} is not an OAM capture channel")
    nuclear = spin_half_distribution(pol.pn)
    orbital = oam_distribution(pol.pl)
    spin = spin_half_distribution(pol.p)
    j_final = channel.j_final

    total = QuadRational.zero()
    for (m_nuclear, w_nuclear), (m_orbital, w_orbital), (m_spin, w_spin) in product(
        nuclear, orbital, spin
    ):
        weight = w_nuclear * w_orbital * w_spin
        if weight == 0:
            continue
        m_coupled = m_orbital + m_spin
        m_final = m_coupled + m_nuclear
        if abs(m_final.twice) > j_final.twice:
            continue
        amplitudes = []
        for j_coupled in _COUPLED_MOMENTA:
            if abs(m_coupled.twice) > j_coupled.twice:
                continue
            term = cg(j_coupled, m_coupled, _HE3_SPIN, m_nuclear, j_final, m_final) * cg(
                _OAM_MOMENTUM, m_orbital, _NEUTRON_SPIN, m_spin, j_coupled, m_coupled
            )
            if not term.is_zero:
                amplitudes.append(term)
        squared = QuadRational.zero()
        for left in amplitudes:
            for right in amplitudes:
                squared += sqrt_product(left, right)
        total += squared * weight
    return ChannelCrossSection(channel, total * model.strength(channel))


def closed_form(
    channel: Channel, pol: PolarizationTriple, model: CaptureModel
) -> ChannelCrossSection:
    if model.mode is CaptureMode.ORDINARY:
        return ordinary_closed_form(channel, pol, model)
    return oam_closed_form(channel, pol, model)


def oracle(channel: Channel, pol: PolarizationTriple, model: CaptureModel) -> ChannelCrossSection:
    if model.mode is CaptureMode.ORDINARY:
        return ordinary_oracle(channel, pol, model)
    return oam_oracle(channel, pol, model)


def channel_cross_sections(
    pol: PolarizationTriple, model: CaptureModel
) -> tuple[ChannelCrossSection, ...]:
    return tuple(closed_form(channel, pol, model) for channel in model.channels)


def total_cross_section(pol: PolarizationTriple, model: CaptureModel) -> QuadRational:
    total = QuadRational.zero()
    for section in channel_cross_sections(pol, model):
        total = total + section.value
    return total


def channel_fractions(
    pol: PolarizationTriple, model: CaptureModel
) -> tuple[tuple[Channel, QuadRational], ...]:
    """Exact share of each channel in the total cross-section."""
    sections = channel_cross_sections(pol, model)
    total = total_cross_section(pol, model)
    if total.is_zero:
        raise DomainError("total cross-section is zero; channel fractions are undefined")
    return tuple((section.channel, section.value / total) for section in sections)


# -- reconciliation of closed forms against the oracle -------------------------


def grid_values(resolution: int) -> tuple[Fraction, ...]:
    """Uniform exact-rational grid of the given resolution over [-1, 1]."""
    if resolution < 2:
        raise DomainError(f"grid resolution must be at least 2, got {resolution}")
    step = Fraction(2, resolution - 1)
    return tuple(-1 + k * step for k in range(resolution))


@dataclass(frozen=True)
class Discrepancy:
    channel: Channel
    pol: PolarizationTriple
    closed_value: QuadRational
    oracle_value: QuadRational


@dataclass(frozen=True)
class CornerExtremum:
    value: QuadRational
    points: tuple[PolarizationTriple, ...]


@dataclass(frozen=True)
class CornerExtrema:
    """Extrema of the j''=2 channel over fully polarized corners, at K=1.

    The channel is multilinear in (p, P_L, P_N), so its extrema over the full
    polarization box are attained at corners; scanning the eight corners is
    therefore an exact global statement.
    """

    maximum: CornerExtremum
    minimum: CornerExtremum
    aligned_corner_value: QuadRational
    note: str


def j2_corner_extrema() -> CornerExtrema:
    channel = OAM_CHANNELS[2]
    model = CaptureModel.uniform(CaptureMode.OAM)
    by_value: dict[QuadRational, list[PolarizationTriple]] = {}
    for signs in product((-1, 1), repeat=3):
        pol = PolarizationTriple.of(*signs)
        value = oam_closed_form(channel, pol, model).value
        by_value.setdefault(value, []).append(pol)
    ordered = sorted(by_value)
    minimum = CornerExtremum(ordered[0], tuple(by_value[ordered[0]]))
    maximum = CornerExtremum(ordered[-1], tuple(by_value[ordered[-1]]))
    aligned = oam_closed_form(channel, PolarizationTriple.of(1, 1, 1), model).value
    note = (
        f"the j=2 channel attains its maximum K*{maximum.value} at the fully aligned "
        f"corners and its minimum K*{minimum.value} where p*P_L = P_L*P_N = -1; "
        "it never vanishes"
    )
    return CornerExtrema(maximum, minimum, aligned, note)


@dataclass(frozen=True)
class ReconciliationReport:
    mode: CaptureMode
    resolution: int
    points_checked: int
    discrepancies: tuple[Discrepancy, ...]
    j2_extrema: CornerExtrema | None

    @property
    def agreement(self) -> bool:
        return not self.discrepancies

    def to_json_dict(self) -> dict:
        def pol_dict(pol: PolarizationTriple) -> dict:
            return {"p": str(pol.p), "P_L": str(pol.pl), "P_N": str(pol.pn)}

        def extremum_dict(extremum: CornerExtremum) -> dict:
            return {
                "value_exact": str(extremum.value),
                "value_decimal": extremum.value.decimal_str(),
                "points": [pol_dict(p) for p in extremum.points],
            }

        payload = {
            "mode": self.mode.value,
            "resolution": self.resolution,
            "points_checked": self.points_checked,
            "agreement": self.agreement,
            "discrepancies": [
                {
                    "channel": d.channel.label,
                    "pol": pol_dict(d.pol),
                    "closed_form": str(d.closed_value),
                    "oracle": str(d.oracle_value),
                }
                for d in self.discrepancies
            ],
        }
        if self.j2_extrema is not None:
            payload["j2_extrema"] = {
                "maximum": extremum_dict(self.j2_extrema.maximum),
                "minimum": extremum_dict(self.j2_extrema.minimum),
                "aligned_corner_value": str(self.j2_extrema.aligned_corner_value),
                "note": self.j2_extrema.note,
            }
        return payload


def compare_with_oracle(mode: CaptureMode, resolution: int = 5) -> ReconciliationReport:
    """Check closed forms against the substate-sum oracle on an exact grid.

    Ordinary mode scans (p, P_N) with P_L = 0; OAM mode scans the full cube.
    Any disagreement is reported point by point, never absorbed.
    """
    values = grid_values(resolution)
    model = CaptureModel.uniform(mode)
    if mode is CaptureMode.ORDINARY:
        points = [PolarizationTriple(p, Fraction(0), pn) for p in values for pn in values]
    else:
        points = [
            PolarizationTriple(p, pl, pn) for p in values for pl in values for pn in values
        ]

    discrepancies = []
    for pol in points:
        for channel in channels_for(mode):
            closed_value = closed_form(channel, pol, model).value
            oracle_value = oracle(channel, pol, model).value
            if closed_value != oracle_value:
                discrepancies.append(Discrepancy(channel, pol, closed_value, oracle_value))
    extrema = j2_corner_extrema() if mode is CaptureMode.OAM else None
    return ReconciliationReport(mode, resolution, len(points), tuple(discrepancies), extrema)
