"""Colorized sub-aperture composition: three Doppler bands become R, G, B.

The azimuth spectrum is cut into three equal-width bands, low to high
Doppler mapping to red, green, blue.  Each band is focused on its own and
the three magnitudes are composed into one 8-bit image, so a target's
colour encodes where its energy sits in Doppler, hence its orientation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dispersion import Hue
from .simulator import ComplexImage, SpectrumGrid, focus_image

NORM_MODES = ("linear", "clip_p999")


@dataclass(frozen=True)
class SubBandSpec:
    """One colour band: a contiguous chunk [f_lo, f_hi) of the Doppler window."""

    band: Hue
    f_lo: float      # [Hz]
    f_hi: float      # [Hz]

    def __post_init__(self) -> None:
        if not self.f_lo < self.f_hi:
            raise ValueError("band needs f_lo < f_hi")
        if self.band not in (Hue.RED, Hue.GREEN, Hue.BLUE):
            raise ValueError(f"not a colour band: {self.band}")


@dataclass(frozen=True)
class RGBImage:
    """8-bit RGB raster, row-major, one row per slant-range line."""

    width: int
    height: int
    pixels: np.ndarray   # (height, width, 3) uint8

    def __post_init__(self) -> None:
        if self.pixels.shape != (self.height, self.width, 3):
            raise ValueError("pixels must be (height, width, 3)")
        if self.pixels.dtype != np.uint8:
            raise ValueError("pixels must be uint8")


def band_specs(f_dc: float, b_a: float) -> tuple[SubBandSpec, SubBandSpec, SubBandSpec]:
    """The three equal thirds of [f_dc - B_a/2, f_dc + B_a/2], low to high."""
    edges = [f_dc - b_a / 2 + k * b_a / 3 for k in range(4)]
    return (
        SubBandSpec(Hue.RED, edges[0], edges[1]),
        SubBandSpec(Hue.GREEN, edges[1], edges[2]),
        SubBandSpec(Hue.BLUE, edges[2], edges[3]),
    )


def split_subbands(
    g: SpectrumGrid,
) -> tuple[ComplexImage, ComplexImage, ComplexImage]:
    """Focus each Doppler third of the spectrum separately.

    Band edges snap to bin boundaries by flooring the edge's bin index, so
    every azimuth bin lands in exactly one band and the three band energies
    add up to the full-grid energy (disjoint masks plus a unitary DFT).
    Returns (red, green, blue) complex images.
    """
    na = g.data.shape[0]
    if na < 3:
        raise ValueError("need at least 3 azimuth bins to split into bands")
    cuts = (0, na // 3, (2 * na) // 3, na)
    out = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        masked = np.zeros_like(g.data)
        masked[lo:hi, :] = g.data[lo:hi, :]
        out.append(focus_image(SpectrumGrid(masked, g.f_a, g.f_r, g.params)))
    return out[0], out[1], out[2]


def compose_rgb(
    r: np.ndarray, g: np.ndarray, b: np.ndarray, norm: str = "linear"
) -> RGBImage:
    """Fuse three per-band magnitude grids into one 8-bit RGB raster.

    The channels share a single normalizer so their relative strengths, and
    therefore the perceived hue, survive quantization: the joint maximum
    (norm="linear") or the joint 99.9th percentile with clipping
    (norm="clip_p999").  Grids arrive azimuth-major and come out as an
    image with azimuth across and range down.  Quantization rounds half up.
    """
    if norm not in NORM_MODES:
        raise ValueError(f"norm must be one of {NORM_MODES}, got {norm!r}")
    if not (r.shape == g.shape == b.shape and r.ndim == 2):
        raise ValueError("channel grids must be three equal-shape 2-D arrays")
    stack = np.stack([np.abs(r).T, np.abs(g).T, np.abs(b).T], axis=-1)
    if norm == "linear":
        ref = stack.max()
    else:
        ref = float(np.percentile(stack, 99.9))
    if ref > 0:
        stack = np.minimum(stack / ref, 1.0)
    # round-half-up, so 0.5 steps are platform-independent (unlike np.round)
    pixels = np.floor(stack * 255 + 0.5).astype(np.uint8)
    return RGBImage(width=pixels.shape[1], height=pixels.shape[0], pixels=pixels)


def encode_ppm(img: RGBImage) -> bytes:
    """Binary PPM (P6) bytes: tiny header, then raw RGB triplets."""
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + img.pixels.tobytes()
