#include "wmark/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wmark/transforms.hpp"

namespace wmark {
namespace {

template <typename T>
double mse_impl(const Raster<T>& a, const Raster<T>& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("mse: image dimensions differ");
  if (a.empty()) throw std::invalid_argument("mse: empty image");
  const auto pa = a.pixels();
  const auto pb = b.pixels();
  double sum = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double d = static_cast<double>(pa[i]) - static_cast<double>(pb[i]);
    sum += d * d;
  }
  return sum / static_cast<double>(pa.size());
}

template <typename T>
double psnr_impl(const Raster<T>& reference, const Raster<T>& test, PeakMode mode) {
  const double err = mse_impl(reference, test);
  double peak = 255.0;
  if (mode == PeakMode::ReferenceMax) {
    peak = static_cast<double>(*std::ranges::max_element(reference.pixels()));
  }
  return psnr_from_mse(err, peak);
}

}  // namespace

double mse(const GrayImage& a, const GrayImage& b) { return mse_impl(a, b); }
double mse(const RealImage& a, const RealImage& b) { return mse_impl(a, b); }

double psnr(const GrayImage& reference, const GrayImage& test, PeakMode peak) {
  return psnr_impl(reference, test, peak);
}
double psnr(const RealImage& reference, const RealImage& test, PeakMode peak) {
  return psnr_impl(reference, test, peak);
}

double psnr_from_mse(double mse_value, double peak) {
  if (mse_value == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse_value);
}

double nc(const WatermarkBits& original, const WatermarkBits& extracted) {
  if (original.size() != extracted.size()) {
    throw std::invalid_argument("nc: watermark lengths differ");
  }
  double cross = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < original.size(); ++i) {
    const double a = original[i];
    const double b = extracted[i];
    cross += a * b;
    norm_a += a * a;
    norm_b += b * b;
  }
  if (norm_a == 0.0 || norm_b == 0.0) {
    throw std::domain_error("nc undefined: a watermark vector is all zeros");
  }
  return cross / std::sqrt(norm_a * norm_b);
}

std::size_t capacity_bits(std::size_t width, std::size_t height) {
  require_block_aligned(width, height);
  return (width / kBlockSize) * (height / kBlockSize);
}

}  // namespace wmark
