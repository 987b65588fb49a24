"""Experiment-design tooling built on the cross-section model.

Cross-sections are linear in the per-channel strength constants, so a
counting experiment over several polarization settings is a weighted
nonnegative least-squares problem.  This module provides the design matrix,
the fit (channel-summed or channel-resolved), a Poisson transmission
simulator for synthetic data, and a sweep that ranks candidate polarization
settings by how well they complete a design.

Counting model: a cell of optical-depth coefficient d (per unit strength)
transmits a fraction T = exp(-d * sigma_total); captures are Poisson with
mean exposure * (1 - T), split across channels in proportion to their
cross-sections, and the fit uses the thin-target linearization
rate = exposure * d * sum_c D[i, c] * K_c.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, TextIO, TypeVar

import numpy as np
from scipy.optimize import nnls

from .cross_sections import (
    CaptureMode,
    CaptureModel,
    Channel,
    channel_fractions,
    channels_for,
    closed_form,
    grid_values,
)
from .errors import DegenerateDesignError, DomainError
from .exactnum import QuadRational
from .polarization import PolarizationTriple

THREADS_ENV_VAR = "HE3CAP_THREADS"

SETTINGS_HEADER = ("p", "P_L", "P_N", "exposure", "depth")
COUNTS_HEADER = ("setting_id", "capture", "transmitted")

_T = TypeVar("_T")
_U = TypeVar("_U")


@dataclass(frozen=True)
class MeasurementSetting:
    """One exposure: a polarization triple, a duration, and a cell depth.

    depth is the dimensionless optical-depth coefficient per unit strength
    (areal density times the cross-section scale).
    """

    pol: PolarizationTriple
    exposure: float
    depth: float

    def __post_init__(self) -> None:
        if not self.exposure > 0:
            raise DomainError(f"exposure must be positive, got {self.exposure}")
        if not self.depth > 0:
            raise DomainError(f"depth must be positive, got {self.depth}")


@dataclass(frozen=True)
class CountRecord:
    """Observed (or simulated) counts for one measurement setting.

    channel_counts, when present, resolves the captures by channel in
    channels_for(mode) order and must sum to capture_counts.
    """

    setting: MeasurementSetting
    capture_counts: int
    transmitted_counts: int
    channel_counts: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.capture_counts < 0 or self.transmitted_counts < 0:
            raise DomainError("counts must be nonnegative")
        if self.channel_counts is not None:
            if any(count < 0 for count in self.channel_counts):
                raise DomainError("channel counts must be nonnegative")
            if sum(self.channel_counts) != self.capture_counts:
                raise DomainError("channel counts must sum to the total captures")


@dataclass(frozen=True, eq=False)
class FitResult:
    """Recovered strength constants with covariance over the free components."""

    channels: tuple[Channel, ...]
    strengths: tuple[float, ...]
    covariance: np.ndarray
    residual_norm: float

    def strength(self, channel: Channel) -> float:
        return self.strengths[self.channels.index(channel)]

    def standard_errors(self) -> tuple[float, ...]:
        return tuple(math.sqrt(max(v, 0.0)) for v in np.diag(self.covariance))

    def to_json_dict(self) -> dict:
        return {
            "K_hat": {
                channel.label: value for channel, value in zip(self.channels, self.strengths)
            },
            "covariance": [[float(v) for v in row] for row in self.covariance],
            "residual_norm": float(self.residual_norm),
            "channels": [channel.label for channel in self.channels],
        }


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_ordered(fn: Callable[[_T], _U], items: Sequence[_T]) -> list[_U]:
    """Map preserving order; parallel over threads when HE3CAP_THREADS > 1."""
    workers = _thread_count()
    if workers == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def design_matrix(settings: Sequence[MeasurementSetting], mode: CaptureMode) -> np.ndarray:
    """Per-setting, per-channel cross-section brackets at unit strength.

    Entry (i, c) is the channel-c cross-section at setting i with K = 1,
    rendered to float from the exact value.
    """
    if not settings:
        raise DomainError("at least one measurement setting is required")
    channels = channels_for(mode)
    unit = CaptureModel.uniform(mode)

    def row(setting: MeasurementSetting) -> list[float]:
        return [float(closed_form(ch, setting.pol, unit).value) for ch in channels]

    return np.array(_map_ordered(row, list(settings)), dtype=float)


def _describe_null_combination(
    scaled_design: np.ndarray, channels: tuple[Channel, ...]
) -> dict[str, float]:
    _, _, vt = np.linalg.svd(scaled_design, full_matrices=True)
    null_vector = vt[-1]
    leading = np.max(np.abs(null_vector))
    return {
        channel.label: round(float(coefficient / leading), 6)
        for channel, coefficient in zip(channels, null_vector)
        if abs(coefficient) > 1e-9 * leading
    }


def _weighted_nnls(
    design: np.ndarray,
    response: np.ndarray,
    weights: np.ndarray,
    channels: tuple[Channel, ...],
) -> FitResult:
    sqrt_weights = np.sqrt(weights)
    scaled_design = design * sqrt_weights[:, None]
    scaled_response = response * sqrt_weights

    singular_values = np.linalg.svd(scaled_design, compute_uv=False)
    if len(singular_values) < len(channels) or singular_values[-1] <= 1e-12 * singular_values[0]:
        combination = _describe_null_combination(scaled_design, channels)
        names = " , ".join(f"{coeff:+g}*K[{label}]" for label, coeff in combination.items())
        raise DegenerateDesignError(
            f"design cannot identify the channel combination {names}; "
            "add settings that separate these channels",
            combination,
        )

    strengths, residual = nnls(scaled_design, scaled_response)

    covariance = np.zeros((len(channels), len(channels)))
    free = strengths > 0
    if free.any():
        free_design = scaled_design[:, free]
        covariance[np.ix_(free, free)] = np.linalg.inv(free_design.T @ free_design)
    return FitResult(channels, tuple(float(v) for v in strengths), covariance, float(residual))


def fit_rates(
    settings: Sequence[MeasurementSetting],
    rates: Sequence[float],
    mode: CaptureMode,
    weights: Sequence[float] | None = None,
) -> FitResult:
    """Weighted nonnegative least squares on capture rates.

    The model is rate_i = exposure_i * depth_i * sum_c D[i, c] * K_c.  With
    unit weights and noiseless rates the recovery is exact up to solver
    precision; this is the entry point for continuous (non-count) data.
    """
    if len(rates) != len(settings):
        raise DomainError("one rate per setting is required")
    channels = channels_for(mode)
    if len(settings) < len(channels):
        raise DegenerateDesignError(
            f"need at least {len(channels)} settings to identify {len(channels)} channels"
        )
    scale = np.array([s.exposure * s.depth for s in settings])
    design = design_matrix(settings, mode) * scale[:, None]
    weight_array = (
        np.ones(len(settings)) if weights is None else np.asarray(weights, dtype=float)
    )
    return _weighted_nnls(design, np.asarray(rates, dtype=float), weight_array, channels)


def fit_strengths(
    records: Sequence[CountRecord],
    mode: CaptureMode,
    channel_resolved: bool = False,
) -> FitResult:
    """Recover strength constants from counting records.

    Channel-summed (default): response is total captures per setting with
    Poisson weights 1/max(count, 1).  Channel-resolved: each record must
    carry channel_counts; every (setting, channel) pair becomes its own
    weighted observation.
    """
    if not records:
        raise DomainError("at least one count record is required")
    settings = [record.setting for record in records]
    channels = channels_for(mode)
    scale = np.array([s.exposure * s.depth for s in settings])
    design = design_matrix(settings, mode) * scale[:, None]

    if not channel_resolved:
        counts = np.array([record.capture_counts for record in records], dtype=float)
        weights = 1.0 / np.maximum(counts, 1.0)
        return _weighted_nnls(design, counts, weights, channels)

    if any(record.channel_counts is None for record in records):
        raise DomainError("channel-resolved fitting needs channel_counts on every record")
    rows = []
    counts_list = []
    for record, design_row in zip(records, design):
        for channel_index, count in enumerate(record.channel_counts):
            row = np.zeros(len(channels))
            row[channel_index] = design_row[channel_index]
            rows.append(row)
            counts_list.append(float(count))
    stacked = np.array(rows)
    counts = np.array(counts_list)
    weights = 1.0 / np.maximum(counts, 1.0)
    return _weighted_nnls(stacked, counts, weights, channels)


def simulate_counts(
    settings: Sequence[MeasurementSetting], model: CaptureModel, seed: int
) -> list[CountRecord]:
    """Simulate a transmission/counting run; bit-reproducible for a seed.

    Each setting draws from an independent generator derived from
    (seed, setting index), so results do not depend on evaluation order or
    thread count.
    """
    channels = channels_for(model.mode)

    def one(indexed: tuple[int, MeasurementSetting]) -> CountRecord:
        index, setting = indexed
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
        sigmas = [float(closed_form(ch, setting.pol, model).value) for ch in channels]
        sigma_total = sum(sigmas)
        transmission = math.exp(-setting.depth * sigma_total)
        captures = int(rng.poisson(setting.exposure * (1.0 - transmission)))
        if captures > 0 and sigma_total > 0:
            split = tuple(int(n) for n in rng.multinomial(captures, [s / sigma_total for s in sigmas]))
        else:
            split = (0,) * len(channels)
        transmitted = int(rng.poisson(setting.exposure * transmission))
        return CountRecord(setting, captures, transmitted, split)

    return _map_ordered(one, list(enumerate(settings)))


# -- discriminability sweep ----------------------------------------------------


@dataclass(frozen=True)
class SweepPoint:
    pol: PolarizationTriple
    fractions: tuple[QuadRational, ...]
    condition_number: float


def _reference_settings(mode: CaptureMode) -> list[PolarizationTriple]:
    # One fewer reference than channels, so one candidate completes a square
    # design: the unpolarized point, plus the fully aligned corner for OAM.
    if mode is CaptureMode.OAM:
        return [PolarizationTriple.of(0, 0, 0), PolarizationTriple.of(1, 1, 1)]
    return [PolarizationTriple.of(0, 0, 0)]


def _condition_number(rows: np.ndarray) -> float:
    singular_values = np.linalg.svd(rows, compute_uv=False)
    smallest = singular_values[-1]
    if smallest <= 0:
        return math.inf
    return float(singular_values[0] / smallest)


def discriminability_sweep(
    grid_resolution: int, mode: CaptureMode, model: CaptureModel | None = None
) -> list[SweepPoint]:
    """Rank grid points by how well they complete a strength-fitting design.

    For every point of the uniform grid over [-1, 1]^3 this reports the exact
    channel fractions of the total cross-section and the condition number of
    the design matrix formed by the point together with the fixed reference
    settings (unpolarized, plus the aligned corner in OAM mode).  Output is
    sorted by condition number, then lexicographically by (p, P_L, P_N).
    """
    if grid_resolution < 2:
        raise DomainError(f"grid resolution must be at least 2, got {grid_resolution}")
    if model is None:
        model = CaptureModel.uniform(mode)
    if model.mode is not mode:
        raise DomainError(f"model mode {model.mode.value} does not match sweep mode {mode.value}")
    channels = channels_for(mode)
    unit = CaptureModel.uniform(mode)
    references = _reference_settings(mode)

    def bracket_row(pol: PolarizationTriple) -> list[float]:
        return [float(closed_form(ch, pol, unit).value) for ch in channels]

    reference_rows = [bracket_row(pol) for pol in references]
    values = grid_values(grid_resolution)
    points = [
        PolarizationTriple(p, pl, pn) for p in values for pl in values for pn in values
    ]

    def evaluate(pol: PolarizationTriple) -> SweepPoint:
        fractions = tuple(share for _, share in channel_fractions(pol, model))
        condition = _condition_number(np.array(reference_rows + [bracket_row(pol)]))
        return SweepPoint(pol, fractions, condition)

    sweep = _map_ordered(evaluate, points)
    sweep.sort(key=lambda point: (point.condition_number, point.pol.p, point.pol.pl, point.pol.pn))
    return sweep


# -- file formats ----------------------------------------------------------------


def _data_rows(handle: Iterable[str]) -> Iterable[str]:
    return (line for line in handle if line.strip() and not line.lstrip().startswith("#"))


def read_settings_csv(source: TextIO) -> list[MeasurementSetting]:
    """Read a settings table with header p,P_L,P_N,exposure,depth.

    Polarizations are parsed as exact rationals ('-1/2' and '0.25' both
    work); comment lines starting with '#' are ignored.
    """
    reader = csv.DictReader(_data_rows(source))
    if reader.fieldnames is None or tuple(reader.fieldnames) != SETTINGS_HEADER:
        raise DomainError(
            f"settings file must have header {','.join(SETTINGS_HEADER)}, "
            f"got {reader.fieldnames}"
        )
    settings = []
    for row in reader:
        pol = PolarizationTriple.of(
            Fraction(row["p"]), Fraction(row["P_L"]), Fraction(row["P_N"])
        )
        settings.append(
            MeasurementSetting(pol, float(row["exposure"]), float(row["depth"]))
        )
    return settings


def write_settings_csv(settings: Sequence[MeasurementSetting], sink: TextIO) -> None:
    writer = csv.writer(sink)
    writer.writerow(SETTINGS_HEADER)
    for setting in settings:
        writer.writerow(
            [setting.pol.p, setting.pol.pl, setting.pol.pn, setting.exposure, setting.depth]
        )


def _channel_count_columns(mode: CaptureMode) -> list[str]:
    return [f"capture_j{channel.j_final}" for channel in channels_for(mode)]


def write_counts_csv(
    records: Sequence[CountRecord],
    sink: TextIO,
    mode: CaptureMode | None = None,
    channel_resolved: bool = False,
) -> None:
    """Write counts with header setting_id,capture,transmitted.

    With channel_resolved=True (requires mode), per-channel capture columns
    are appended after the standard three.
    """
    header = list(COUNTS_HEADER)
    if channel_resolved:
        if mode is None:
            raise DomainError("channel-resolved output needs the capture mode")
        header += _channel_count_columns(mode)
    writer = csv.writer(sink)
    writer.writerow(header)
    for index, record in enumerate(records):
        row = [index, record.capture_counts, record.transmitted_counts]
        if channel_resolved:
            if record.channel_counts is None:
                raise DomainError("records lack channel counts")
            row += list(record.channel_counts)
        writer.writerow(row)


def read_counts_csv(
    source: TextIO, settings: Sequence[MeasurementSetting]
) -> list[CountRecord]:
    """Read a counts table; setting_id indexes into the settings list."""
    reader = csv.DictReader(_data_rows(source))
    fields = tuple(reader.fieldnames or ())
    if fields[: len(COUNTS_HEADER)] != COUNTS_HEADER:
        raise DomainError(
            f"counts file must start with header {','.join(COUNTS_HEADER)}, got {fields}"
        )
    channel_columns = [name for name in fields if name.startswith("capture_j")]
    records = []
    for row in reader:
        setting_id = int(row["setting_id"])
        if not 0 <= setting_id < len(settings):
            raise DomainError(f"setting_id {setting_id} has no matching setting")
        channel_counts = (
            tuple(int(row[name]) for name in channel_columns) if channel_columns else None
        )
        records.append(
            CountRecord(
                settings[setting_id],
                int(row["capture"]),
                int(row["transmitted"]),
                channel_counts,
            )
        )
    return records
