#include "wmark/attacks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "wmark/transforms.hpp"

namespace wmark {
namespace {

constexpr std::array<int, 64> kLuminanceTable = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99,
};

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1));
}

void require_odd(std::size_t n, const char* what) {
  if (n == 0 || n % 2 == 0) {
    throw std::invalid_argument(std::string(what) + " size must be odd, got " + std::to_string(n));
  }
}

}  // namespace

Kernel::Kernel(std::size_t size, std::vector<double> weights)
    : size_(size), weights_(std::move(weights)) {
  require_odd(size_, "kernel");
  if (weights_.size() != size_ * size_) {
    throw std::invalid_argument("kernel weight count must be size*size");
  }
}

Kernel Kernel::average(std::size_t size) {
  require_odd(size, "kernel");
  return Kernel(size, std::vector<double>(size * size, 1.0 / static_cast<double>(size * size)));
}

Kernel Kernel::gaussian(std::size_t size, double sigma) {
  require_odd(size, "kernel");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("gaussian sigma must be positive");
  }
  const auto half = static_cast<double>(size / 2);
  std::vector<double> w(size * size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) {
      const double dy = static_cast<double>(r) - half;
      const double dx = static_cast<double>(c) - half;
      w[r * size + c] = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
    }
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  return Kernel(size, std::move(w));
}

Kernel Kernel::sharpen() { return Kernel(3, {0, -1, 0, -1, 5, -1, 0, -1, 0}); }

double Kernel::sum() const { return std::accumulate(weights_.begin(), weights_.end(), 0.0); }

std::vector<int> jpeg_quant_table(int quality) {
  if (quality < 1 || quality > 100) {
    throw std::invalid_argument("JPEG quality must be in [1, 100], got " + std::to_string(quality));
  }
  const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  std::vector<int> table(kLuminanceTable.size());
  std::ranges::transform(kLuminanceTable, table.begin(), [scale](int q) {
    return std::clamp((q * scale + 50) / 100, 1, 255);
  });
  return table;
}

GrayImage jpeg_compress(const GrayImage& img, int quality) {
  const std::vector<int> table = jpeg_quant_table(quality);
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  GrayImage out(w, h);
  for (std::size_t by = 0; by < h; by += kBlockSize) {
    for (std::size_t bx = 0; bx < w; bx += kBlockSize) {
      Block block;
      for (std::size_t i = 0; i < kBlockSize; ++i) {
        for (std::size_t j = 0; j < kBlockSize; ++j) {
          const std::size_t x = std::min(bx + j, w - 1);
          const std::size_t y = std::min(by + i, h - 1);
          block(i, j) = static_cast<double>(img.at(x, y)) - 128.0;
        }
      }
      CoefBlock coef = dct2(block);
      for (std::size_t k = 0; k < kBlockArea; ++k) {
        const double step = table[k];
        coef.coeffs[k] = std::round(coef.coeffs[k] / step) * step;
      }
      const Block decoded = idct2(coef);
      for (std::size_t i = 0; i < kBlockSize && by + i < h; ++i) {
        for (std::size_t j = 0; j < kBlockSize && bx + j < w; ++j) {
          out.at(bx + j, by + i) = quantize_pixel(decoded(i, j) + 128.0);
        }
      }
    }
  }
  return out;
}

GrayImage add_gaussian_noise(const GrayImage& img, double variance, std::uint64_t seed) {
  if (!(variance >= 0.0) || !std::isfinite(variance)) {
    throw std::invalid_argument("noise variance must be >= 0");
  }
  if (variance == 0.0) return img;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(variance));
  GrayImage out(img.width(), img.height());
  std::ranges::transform(img.pixels(), out.pixels().begin(), [&](std::uint8_t p) {
    return quantize_pixel(static_cast<double>(p) + 255.0 * noise(rng));
  });
  return out;
}

GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) {
    throw std::invalid_argument("salt & pepper density must be in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(density);
  std::bernoulli_distribution salt(0.5);
  GrayImage out = img;
  for (auto& p : out.pixels()) {
    if (hit(rng)) p = salt(rng) ? 255 : 0;
  }
  return out;
}

GrayImage convolve_filter(const GrayImage& img, const Kernel& kernel) {
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const auto half = static_cast<std::ptrdiff_t>(kernel.size() / 2);
  GrayImage out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double acc = 0.0;
      for (std::ptrdiff_t r = -half; r <= half; ++r) {
        for (std::ptrdiff_t c = -half; c <= half; ++c) {
          // Convolution flips the kernel.
          const double k = kernel(static_cast<std::size_t>(half - r), static_cast<std::size_t>(half - c));
          const std::size_t sx = clamp_index(static_cast<std::ptrdiff_t>(x) + c, w);
          const std::size_t sy = clamp_index(static_cast<std::ptrdiff_t>(y) + r, h);
          acc += k * img.at(sx, sy);
        }
      }
      out.at(x, y) = quantize_pixel(acc);
    }
  }
  return out;
}

GrayImage median_filter(const GrayImage& img, std::size_t size) {
  require_odd(size, "median window");
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const auto half = static_cast<std::ptrdiff_t>(size / 2);
  GrayImage out(w, h);
  std::vector<std::uint8_t> window(size * size);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      std::size_t n = 0;
      for (std::ptrdiff_t r = -half; r <= half; ++r) {
        for (std::ptrdiff_t c = -half; c <= half; ++c) {
          window[n++] = img.at(clamp_index(static_cast<std::ptrdiff_t>(x) + c, w),
                               clamp_index(static_cast<std::ptrdiff_t>(y) + r, h));
        }
      }
      auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
      std::nth_element(window.begin(), mid, window.end());
      out.at(x, y) = *mid;
    }
  }
  return out;
}

GrayImage rotate(const GrayImage& img, double angle_degrees) {
  if (!std::isfinite(angle_degrees)) throw std::invalid_argument("rotation angle must be finite");
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const double theta = angle_degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double cx = (static_cast<double>(w) - 1.0) / 2.0;
  const double cy = (static_cast<double>(h) - 1.0) / 2.0;
  const double max_x = static_cast<double>(w) - 1.0;
  const double max_y = static_cast<double>(h) - 1.0;
  // Sample positions within this distance of the frame are snapped inside so
  // that whole turns reproduce the input.
  constexpr double kEdgeSlack = 1e-9;

  GrayImage out(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double dx = static_cast<double>(x) - cx;
      const double dy = static_cast<double>(y) - cy;
      // Inverse map: source = R(-theta) * (dest - center) + center.
      double sx = cs * dx + sn * dy + cx;
      double sy = -sn * dx + cs * dy + cy;
      if (sx < -kEdgeSlack || sy < -kEdgeSlack || sx > max_x + kEdgeSlack ||
          sy > max_y + kEdgeSlack) {
        out.at(x, y) = 0;
        continue;
      }
      sx = std::clamp(sx, 0.0, max_x);
      sy = std::clamp(sy, 0.0, max_y);
      const auto x0 = static_cast<std::size_t>(std::floor(sx));
      const auto y0 = static_cast<std::size_t>(std::floor(sy));
      const std::size_t x1 = std::min(x0 + 1, w - 1);
      const std::size_t y1 = std::min(y0 + 1, h - 1);
      const double fx = sx - static_cast<double>(x0);
      const double fy = sy - static_cast<double>(y0);
      const double top = (1.0 - fx) * img.at(x0, y0) + fx * img.at(x1, y0);
      const double bottom = (1.0 - fx) * img.at(x0, y1) + fx * img.at(x1, y1);
      out.at(x, y) = quantize_pixel((1.0 - fy) * top + fy * bottom);
    }
  }
  return out;
}

GrayImage crop(const GrayImage& img, const Rect& keep) {
  if (keep.x > img.width() || keep.y > img.height() || keep.width > img.width() - keep.x ||
      keep.height > img.height() - keep.y) {
    throw std::invalid_argument("crop rectangle exceeds image bounds");
  }
  GrayImage out(img.width(), img.height(), 0);
  for (std::size_t y = keep.y; y < keep.y + keep.height; ++y) {
    for (std::size_t x = keep.x; x < keep.x + keep.width; ++x) out.at(x, y) = img.at(x, y);
  }
  return out;
}

Rect centered_half_area(std::size_t width, std::size_t height) {
  const auto w = static_cast<std::size_t>(std::lround(static_cast<double>(width) / std::numbers::sqrt2));
  const auto h = static_cast<std::size_t>(std::lround(static_cast<double>(height) / std::numbers::sqrt2));
  return Rect{(width - w) / 2, (height - h) / 2, w, h};
}

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec, std::uint64_t default_seed) {
  const std::uint64_t seed = spec.has_seed ? spec.seed : default_seed;
  switch (spec.kind) {
    case AttackKind::Jpeg:
      return jpeg_compress(img, spec.quality);
    case AttackKind::GaussianNoise:
      return add_gaussian_noise(img, spec.variance, seed);
    case AttackKind::SaltPepper:
      return salt_pepper(img, spec.density, seed);
    case AttackKind::Sharpen:
      return convolve_filter(img, Kernel::sharpen());
    case AttackKind::Rotate:
      return rotate(img, spec.angle_degrees);
    case AttackKind::Median:
      return median_filter(img, spec.kernel_size);
    case AttackKind::Average:
      return convolve_filter(img, Kernel::average(spec.kernel_size));
    case AttackKind::GaussianFilter:
      return convolve_filter(img, Kernel::gaussian(spec.kernel_size, spec.sigma));
    case AttackKind::Crop:
      return crop(img, spec.has_crop_rect ? spec.crop_rect
                                          : centered_half_area(img.width(), img.height()));
  }
  throw std::invalid_argument("unknown attack kind");
}

}  // namespace wmark
