#pragma once

// Deterministic stand-in assets so tests and demos never depend on external
// images: a cover with natural-image statistics and a 64x64 binary logo.

#include <cstddef>
#include <cstdint>

#include "wmark/image.hpp"
#include "wmark/watermark.hpp"

namespace wmark::synthetic {

/// Piecewise-smooth scene: a lit background, multi-octave value noise with a
/// roughly 1/f spectrum, and a set of shaded shapes with sharp edges.
/// Intensities stay inside [16, 235]. Randomness comes only from
/// std::mt19937_64, so a seed gives the same image wherever libm's sin/cos/exp
/// agree; tests compare runs within one build, never against stored pixels.
GrayImage natural_scene(std::size_t width = 512, std::size_t height = 512,
                        std::uint64_t seed = 2016);

/// Ring-and-dot emblem; roughly half the bits are set.
WatermarkBits emblem_logo(std::size_t width = 64, std::size_t height = 64);

}  // namespace wmark::synthetic
