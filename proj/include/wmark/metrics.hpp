#pragma once

#include <cstddef>

#include "wmark/image.hpp"
#include "wmark/watermark.hpp"

namespace wmark {

/// Peak used by psnr: the fixed 8-bit maximum, or the literal max over the
/// reference image's pixels.
enum class PeakMode { Fixed255, ReferenceMax };

/// Mean squared intensity difference. Throws std::invalid_argument on shape mismatch.
double mse(const GrayImage& a, const GrayImage& b);
double mse(const RealImage& a, const RealImage& b);

/// 10 log10(peak^2 / mse) in dB; +infinity when the images are identical.
/// With PeakMode::ReferenceMax the peak is max over `reference`.
double psnr(const GrayImage& reference, const GrayImage& test,
            PeakMode peak = PeakMode::Fixed255);
double psnr(const RealImage& reference, const RealImage& test,
            PeakMode peak = PeakMode::Fixed255);

/// PSNR for a known mse and peak.
double psnr_from_mse(double mse_value, double peak = 255.0);

/// Normalized correlation of two binary watermarks. Throws
/// std::invalid_argument on length mismatch and std::domain_error when
/// either vector is all zeros (the ratio is undefined there).
double nc(const WatermarkBits& original, const WatermarkBits& extracted);

/// Bits a cover of this size can carry: one per 8x8 block.
std::size_t capacity_bits(std::size_t width, std::size_t height);

struct QualityReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  double nc = 0.0;
  std::size_t capacity_bits = 0;
};

}  // namespace wmark
