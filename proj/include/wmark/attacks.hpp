#pragma once

// Image degradations used to probe watermark robustness. Every attack keeps
// the input dimensions and returns an 8-bit image; stochastic ones take an
// explicit seed.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wmark/image.hpp"

namespace wmark {

/// Square, odd-sized convolution kernel, row-major.
class Kernel {
 public:
  /// Throws std::invalid_argument unless size is odd and weights has size*size entries.
  Kernel(std::size_t size, std::vector<double> weights);

  static Kernel average(std::size_t size);
  static Kernel gaussian(std::size_t size, double sigma);
  static Kernel sharpen();

  std::size_t size() const { return size_; }
  double operator()(std::size_t row, std::size_t col) const { return weights_[row * size_ + col]; }
  double sum() const;

 private:
  std::size_t size_;
  std::vector<double> weights_;
};

struct Rect {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t width = 0;
  std::size_t height = 0;
};

/// Standard luminance quantization table scaled by the IJG quality law.
std::vector<int> jpeg_quant_table(int quality);

/// Baseline-JPEG pixel damage: level shift, 8x8 DCT, quantize/dequantize,
/// inverse DCT, clamp and round. Partial edge blocks are padded by edge
/// replication. Throws std::invalid_argument unless quality is in [1, 100].
GrayImage jpeg_compress(const GrayImage& img, int quality);

/// Adds 255 * n with n ~ Normal(0, sqrt(variance)), variance in normalized
/// [0,1] intensity units.
GrayImage add_gaussian_noise(const GrayImage& img, double variance, std::uint64_t seed);

/// Each pixel independently becomes 0 or 255 (even odds) with probability `density`.
GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed);

/// Spatial convolution with replicate-edge padding, clamped and rounded.
GrayImage convolve_filter(const GrayImage& img, const Kernel& kernel);

/// Window median with replicate-edge padding. Throws for even `size`.
GrayImage median_filter(const GrayImage& img, std::size_t size);

/// Bilinear rotation about the image center; exposed corners become 0.
GrayImage rotate(const GrayImage& img, double angle_degrees);

/// Zeroes every pixel outside `keep`. Throws if `keep` leaves the frame.
GrayImage crop(const GrayImage& img, const Rect& keep);

enum class AttackKind {
  Jpeg,
  GaussianNoise,
  SaltPepper,
  Sharpen,
  Rotate,
  Median,
  Average,
  GaussianFilter,
  Crop,
};

/// One attack with its parameters. Parsed from strings such as
/// `jpeg:q=50`, `gauss-noise:v=0.01,seed=7`, `median:n=3`,
/// `crop:x=128,y=128,w=256,h=256`.
struct AttackSpec {
  AttackKind kind = AttackKind::Jpeg;
  int quality = 75;
  double variance = 0.01;
  double density = 0.01;
  double angle_degrees = 1.0;
  std::size_t kernel_size = 3;
  double sigma = 0.5;
  /// Unset crop (all zero) keeps a centered rectangle of half the frame area.
  Rect crop_rect{};
  bool has_crop_rect = false;
  std::uint64_t seed = 0;
  bool has_seed = false;

  /// Short name as used in the spec grammar, e.g. "gauss-noise".
  std::string name() const;
  /// Canonical parameter list, e.g. "v=0.01,seed=7".
  std::string params() const;
  std::string to_string() const;

  /// Throws std::invalid_argument on unknown kinds, unknown keys, malformed
  /// numbers or out-of-range values.
  static AttackSpec parse(std::string_view text);
};

/// Applies the attack. `default_seed` is used by stochastic kinds whose spec
/// carries no seed.
GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec,
                       std::uint64_t default_seed = 0);

/// Centered rectangle covering half the frame area.
Rect centered_half_area(std::size_t width, std::size_t height);

}  // namespace wmark
