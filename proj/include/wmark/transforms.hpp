#pragma once

// Block partitioning, orthonormal 8x8 DCT and zig-zag band selection.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wmark/image.hpp"

namespace wmark {

inline constexpr std::size_t kBlockSize = 8;
inline constexpr std::size_t kBlockArea = kBlockSize * kBlockSize;

/// 8x8 block of reals, row-major: element (u, v) lives at u * 8 + v.
struct Block {
  std::array<double, kBlockArea> values{};

  double& operator()(std::size_t u, std::size_t v) { return values[u * kBlockSize + v]; }
  double operator()(std::size_t u, std::size_t v) const { return values[u * kBlockSize + v]; }

  friend bool operator==(const Block&, const Block&) = default;
};

/// DCT coefficients F(u, v) of one block. Kept distinct from pixel blocks so
/// the two domains cannot be mixed up at call sites.
struct CoefBlock {
  std::array<double, kBlockArea> coeffs{};

  double& operator()(std::size_t u, std::size_t v) { return coeffs[u * kBlockSize + v]; }
  double operator()(std::size_t u, std::size_t v) const { return coeffs[u * kBlockSize + v]; }

  friend bool operator==(const CoefBlock&, const CoefBlock&) = default;
};

/// Position inside an 8x8 coefficient block; u is the row, v the column.
struct BlockPos {
  std::size_t u = 0;
  std::size_t v = 0;

  friend bool operator==(const BlockPos&, const BlockPos&) = default;
};

/// The standard JPEG zig-zag scan of an 8x8 grid, DC first.
const std::array<BlockPos, kBlockArea>& zigzag_order();

/// Ordered set of coefficient positions forming the embedding band.
class BandSelector {
 public:
  /// First `band_len` positions of the zig-zag scan. Default band is 6 long
  /// and includes DC: (0,0) (0,1) (1,0) (2,0) (1,1) (0,2).
  static BandSelector zigzag_prefix(std::size_t band_len = 6);

  /// Arbitrary positions; must be non-empty, in range and duplicate-free.
  static BandSelector from_positions(std::vector<BlockPos> positions);

  /// Parses "u:v,u:v,..." as used by --band-indices.
  static BandSelector parse(std::string_view text);

  std::size_t band_len() const { return positions_.size(); }
  std::span<const BlockPos> positions() const { return positions_; }
  std::string to_string() const;

  friend bool operator==(const BandSelector&, const BandSelector&) = default;

 private:
  explicit BandSelector(std::vector<BlockPos> positions) : positions_(std::move(positions)) {}
  std::vector<BlockPos> positions_;
};

/// Splits an image into non-overlapping 8x8 blocks in row-major block order.
/// Throws std::invalid_argument unless both dimensions are positive multiples of 8.
std::vector<Block> partition_blocks(const GrayImage& img);
std::vector<Block> partition_blocks(const RealImage& img);

/// Inverse of partition_blocks; pixel values are clamped and rounded.
GrayImage assemble_image(std::span<const Block> blocks, std::size_t width, std::size_t height);

/// Inverse of partition_blocks without quantization.
RealImage assemble_real_image(std::span<const Block> blocks, std::size_t width,
                              std::size_t height);

/// Forward orthonormal 2D DCT, computed as two separable 1D passes.
CoefBlock dct2(const Block& block);

/// Inverse of dct2.
Block idct2(const CoefBlock& coef);

std::vector<double> extract_low_band(const CoefBlock& coef, const BandSelector& sel);

/// Replaces the band positions of `coef` with `band` (length must equal band_len).
CoefBlock insert_low_band(const CoefBlock& coef, std::span<const double> band,
                          const BandSelector& sel);

/// Throws std::invalid_argument unless width and height are positive multiples of 8.
void require_block_aligned(std::size_t width, std::size_t height);

}  // namespace wmark
