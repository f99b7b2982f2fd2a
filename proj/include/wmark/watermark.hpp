#pragma once

// Non-blind DCT+PCA watermarking: one logo bit per 8x8 block, carried on the
// first principal component of the block's low-frequency DCT band.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wmark/image.hpp"
#include "wmark/pca.hpp"
#include "wmark/transforms.hpp"

namespace wmark {

/// Binary logo flattened row-major; bit i rides in block i.
class WatermarkBits {
 public:
  WatermarkBits() = default;
  /// Throws std::invalid_argument if bits.size() != width*height or a bit is not 0/1.
  WatermarkBits(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

  /// Any nonzero pixel becomes a 1 bit.
  static WatermarkBits from_image(const GrayImage& logo);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return bits_.size(); }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  std::size_t ones() const;

  /// 0 -> 0, 1 -> 255.
  GrayImage to_image() const;

  friend bool operator==(const WatermarkBits&, const WatermarkBits&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct EmbedParams {
  double alpha = 30.0;
  BandSelector band = BandSelector::zigzag_prefix(6);
};

struct RawExtraction {
  std::vector<double> values;  ///< recovered (PC1' - PC1) / alpha per block
  WatermarkBits bits;          ///< values thresholded at 0.5
};

/// Band coefficients of every block of an image, one row per block.
FeatureMatrix build_features(const RealImage& img, const BandSelector& band);
FeatureMatrix build_features(const GrayImage& img, const BandSelector& band);

/// Embeds `w` into `cover`. The block count of the cover must equal the bit
/// count of `w`; throws std::invalid_argument otherwise or for a negative or
/// non-finite alpha.
GrayImage embed(const GrayImage& cover, const WatermarkBits& w, const EmbedParams& params);

/// Same pipeline with pixel clamping and rounding skipped.
RealImage embed_unquantized(const RealImage& cover, const WatermarkBits& w,
                            const EmbedParams& params);

/// Recovers the watermark from `suspect` using the PCA basis fitted on the
/// cover (or `model` when supplied). The cover is always needed because the
/// recovered value is the PC1 difference between suspect and cover.
/// Throws std::domain_error for alpha == 0 and std::invalid_argument for
/// mismatched or misaligned dimensions.
RawExtraction extract(const GrayImage& cover, const GrayImage& suspect,
                      const EmbedParams& params,
                      const std::optional<PcaModel>& model = std::nullopt);

RawExtraction extract(const RealImage& cover, const RealImage& suspect,
                      const EmbedParams& params,
                      const std::optional<PcaModel>& model = std::nullopt);

/// bit i = values[i] >= threshold. The result is shaped width x height.
WatermarkBits binarize(std::span<const double> values, std::size_t width, std::size_t height,
                       double threshold = 0.5);

/// Logo grid implied by a block-aligned cover: (width/8) x (height/8).
struct LogoShape {
  std::size_t width = 0;
  std::size_t height = 0;
};
LogoShape logo_shape_for(std::size_t cover_width, std::size_t cover_height);

}  // namespace wmark
