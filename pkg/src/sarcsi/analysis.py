"""Model-vs-simulation verification and orientation inversion.

Two closing steps.  verify_scene_against_model simulates a scene, finds the
spectral peaks, and checks them off against the analytic diffraction orders.
estimate_orientation_map goes the other way: from the three sub-band energy
maps of a CSI product back to a per-pixel orientation estimate.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .dispersion import DiffractionSolution
from .params import RadarParams
from .scene import Scene
from .simulator import azimuth_power_spectrum, peak_indices, synth_spectrum

# Detection threshold as a fraction of the coherent ceiling Nr * (sum amp)^2.
# Anchoring to the ceiling rather than the profile's own maximum keeps windows
# that contain no order from promoting their sidelobe tails to detections.
DETECT_FRAC = 0.5


@dataclass(frozen=True)
class PeakMatch:
    """One matched (analytic order, detected peak) pair."""

    m: int
    f_pred: float        # [Hz]
    f_peak: float        # [Hz]
    distance_bins: float


@dataclass(frozen=True)
class TargetReport:
    """Verification outcome for a single target."""

    label: str
    predicted: list[dict]
    detected: list[dict]
    matches: list[PeakMatch]
    unmatched_predictions: int
    unmatched_detections: int
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    """Aggregate pass/fail of model predictions against simulated spectra."""

    tol_bins: float
    targets: list[TargetReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.targets)


def detect_peaks(
    f_a: np.ndarray, power: np.ndarray, ref_power: float, frac: float = DETECT_FRAC
) -> list[tuple[float, float]]:
    """(frequency, power) of local maxima at or above frac of ref_power."""
    idx = peak_indices(power, frac * ref_power)
    return [(float(f_a[i]), float(power[i])) for i in idx]


def verify_scene_against_model(
    scene: Scene,
    p: RadarParams,
    predictions: list[DiffractionSolution],
    tol_bins: float = 2.0,
    na: int = 2048,
    nr: int = 256,
) -> VerificationReport:
    """Simulate one target and match its spectral peaks to analytic orders.

    Peaks are local maxima of the azimuth power marginal at or above half
    the coherent ceiling nr * (sum of amplitudes)^2.  Observable predictions
    and detections are paired greedily by ascending bin distance; a pairing
    only counts within tol_bins.  The target passes when every observable
    prediction found its peak and no detection is left unclaimed.
    """
    if not predictions:
        raise ValueError("need at least one predicted order")
    g = synth_spectrum(scene, p, na, nr)
    f_a, power = azimuth_power_spectrum(g)
    ceiling = nr * float(scene.amp.sum()) ** 2
    detected = detect_peaks(f_a, power, ceiling)

    bin_hz = p.B_a / na
    observable = [d for d in predictions if d.observable]
    pairs = sorted(
        (
            (abs(d.f_d - f_peak) / bin_hz, i, j)
            for i, d in enumerate(observable)
            for j, (f_peak, _) in enumerate(detected)
        ),
    )
    matches: list[PeakMatch] = []
    used_pred: set[int] = set()
    used_det: set[int] = set()
    for dist, i, j in pairs:
        if dist > tol_bins:
            break
        if i in used_pred or j in used_det:
            continue
        used_pred.add(i)
        used_det.add(j)
        matches.append(
            PeakMatch(
                m=observable[i].m,
                f_pred=observable[i].f_d,
                f_peak=detected[j][0],
                distance_bins=dist,
            )
        )
    unmatched_pred = len(observable) - len(used_pred)
    unmatched_det = len(detected) - len(used_det)
    target = TargetReport(
        label=scene.label,
        predicted=[
            {
                "m": d.m,
                "theta_sq_rad": d.theta_sq,
                "f_d_hz": d.f_d,
                "observable": d.observable,
                "hue": d.hue.value,
            }
            for d in predictions
        ],
        detected=[{"f_d_hz": f, "power": pw} for f, pw in detected],
        matches=sorted(matches, key=lambda mt: mt.m),
        unmatched_predictions=unmatched_pred,
        unmatched_detections=unmatched_det,
        passed=unmatched_pred == 0 and unmatched_det == 0,
    )
    return VerificationReport(tol_bins=tol_bins, targets=[target])


def merge_reports(reports: list[VerificationReport]) -> VerificationReport:
    """Collect several single-target reports into one."""
    if not reports:
        raise ValueError("nothing to merge")
    tol = reports[0].tol_bins
    if any(r.tol_bins != tol for r in reports):
        raise ValueError("reports disagree on tol_bins")
    return VerificationReport(
        tol_bins=tol, targets=[t for r in reports for t in r.targets]
    )


def report_to_json(report: VerificationReport) -> str:
    """Stable-key JSON for golden-file comparison."""
    payload = {
        "tol_bins": report.tol_bins,
        "passed": report.passed,
        "targets": [asdict(t) for t in report.targets],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def doppler_centroid(f_a: np.ndarray, power: np.ndarray) -> float:
    """Power-weighted mean Doppler of a full azimuth spectrum [Hz]."""
    total = float(np.sum(power))
    if total <= 0:
        raise ValueError("spectrum carries no power")
    return float(np.sum(f_a * power) / total)


def estimate_orientation_map(
    r: np.ndarray,
    g: np.ndarray,
    b: np.ndarray,
    p: RadarParams,
    noise_floor: float = 0.01,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-pixel orientation from three sub-band magnitude grids.

    Only the three band energies survive in a CSI product, so the Doppler
    estimate is the coarse band centroid: f_hat = sum(center_b E_b) / sum(E_b)
    with band centres at f_dc and f_dc -/+ B_a/3.  Pixels whose total energy
    is at or below noise_floor times the strongest pixel are masked out.
    Returns (theta_az [rad] with NaN where masked, mask).
    """
    if not (r.shape == g.shape == b.shape):
        raise ValueError("band grids must have equal shapes")
    e = np.stack([np.abs(r) ** 2, np.abs(g) ** 2, np.abs(b) ** 2])
    total = e.sum(axis=0)
    mask = total > noise_floor * total.max() if total.size else total.astype(bool)
    centers = np.array([p.f_dc - p.B_a / 3, p.f_dc, p.f_dc + p.B_a / 3])
    theta = np.full(r.shape, np.nan)
    if mask.any():
        f_hat = np.einsum("b,bij->ij", centers, e)[mask] / total[mask]
        # vectorized invert_orientation_from_doppler; |f_hat| <= B_a/3 keeps
        # the arcsine argument well inside [-1, 1]
        theta[mask] = -np.arcsin(p.lam * f_hat / (2 * p.V))
    return theta, mask
