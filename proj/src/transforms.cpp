#include "wmark/transforms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace wmark {
namespace {

// basis[k][n] = c(k) * cos((2n + 1) k pi / 16), c(0) = sqrt(1/8), c(k>0) = sqrt(2/8).
// This is the 1D factor of the 2D transform 2 C(u) C(v) / sqrt(64) * cos * cos.
using Basis = std::array<std::array<double, kBlockSize>, kBlockSize>;

const Basis& dct_basis() {
  static const Basis basis = [] {
    Basis b{};
    const double n = static_cast<double>(kBlockSize);
    for (std::size_t k = 0; k < kBlockSize; ++k) {
      const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
      for (std::size_t x = 0; x < kBlockSize; ++x) {
        b[k][x] = scale * std::cos((2.0 * static_cast<double>(x) + 1.0) *
                                   static_cast<double>(k) * std::numbers::pi / (2.0 * n));
      }
    }
    return b;
  }();
  return basis;
}

template <typename Pixel>
std::vector<Block> partition_impl(const Raster<Pixel>& img) {
  require_block_aligned(img.width(), img.height());
  const std::size_t bw = img.width() / kBlockSize;
  const std::size_t bh = img.height() / kBlockSize;
  std::vector<Block> blocks(bw * bh);
  for (std::size_t by = 0; by < bh; ++by) {
    for (std::size_t bx = 0; bx < bw; ++bx) {
      Block& b = blocks[by * bw + bx];
      for (std::size_t i = 0; i < kBlockSize; ++i) {
        for (std::size_t j = 0; j < kBlockSize; ++j) {
          b(i, j) = static_cast<double>(img.at(bx * kBlockSize + j, by * kBlockSize + i));
        }
      }
    }
  }
  return blocks;
}

template <typename Pixel, typename Convert>
Raster<Pixel> assemble_impl(std::span<const Block> blocks, std::size_t width,
                            std::size_t height, Convert convert) {
  require_block_aligned(width, height);
  const std::size_t bw = width / kBlockSize;
  const std::size_t bh = height / kBlockSize;
  if (blocks.size() != bw * bh) {
    throw std::invalid_argument("block count " + std::to_string(blocks.size()) +
                                " does not match image of " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
  Raster<Pixel> img(width, height);
  for (std::size_t by = 0; by < bh; ++by) {
    for (std::size_t bx = 0; bx < bw; ++bx) {
      const Block& b = blocks[by * bw + bx];
      for (std::size_t i = 0; i < kBlockSize; ++i) {
        for (std::size_t j = 0; j < kBlockSize; ++j) {
          img.at(bx * kBlockSize + j, by * kBlockSize + i) = convert(b(i, j));
        }
      }
    }
  }
  return img;
}

}  // namespace

void require_block_aligned(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0 || width % kBlockSize != 0 || height % kBlockSize != 0) {
    throw std::invalid_argument("image dimensions must be multiples of 8 (got " +
                                std::to_string(width) + "x" + std::to_string(height) + ")");
  }
}

const std::array<BlockPos, kBlockArea>& zigzag_order() {
  static const std::array<BlockPos, kBlockArea> order = [] {
    std::array<BlockPos, kBlockArea> out{};
    std::size_t t = 0;
    const std::size_t last = kBlockSize - 1;
    for (std::size_t diag = 0; diag <= 2 * last; ++diag) {
      const std::size_t lo = diag > last ? diag - last : 0;
      const std::size_t hi = std::min(diag, last);
      // Even anti-diagonals run bottom-left to top-right, odd ones the reverse.
      for (std::size_t s = 0; s <= hi - lo; ++s) {
        const std::size_t u = diag % 2 == 0 ? hi - s : lo + s;
        out[t++] = BlockPos{u, diag - u};
      }
    }
    return out;
  }();
  return order;
}

BandSelector BandSelector::zigzag_prefix(std::size_t band_len) {
  if (band_len == 0 || band_len > kBlockArea) {
    throw std::invalid_argument("band length must be in [1, 64]");
  }
  const auto& zz = zigzag_order();
  return BandSelector(std::vector<BlockPos>(zz.begin(), zz.begin() + band_len));
}

BandSelector BandSelector::from_positions(std::vector<BlockPos> positions) {
  if (positions.empty() || positions.size() > kBlockArea) {
    throw std::invalid_argument("band must hold between 1 and 64 positions");
  }
  std::array<bool, kBlockArea> seen{};
  for (const auto& p : positions) {
    if (p.u >= kBlockSize || p.v >= kBlockSize) {
      throw std::invalid_argument("band position outside the 8x8 block");
    }
    if (seen[p.u * kBlockSize + p.v]) {
      throw std::invalid_argument("duplicate band position " + std::to_string(p.u) + ":" +
                                  std::to_string(p.v));
    }
    seen[p.u * kBlockSize + p.v] = true;
  }
  return BandSelector(std::move(positions));
}

BandSelector BandSelector::parse(std::string_view text) {
  std::vector<BlockPos> positions;
  auto parse_index = [&](std::string_view s) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw std::invalid_argument("malformed band index '" + std::string(text) + "'");
    }
    return value;
  };
  const std::string_view all = text;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    if (item.empty()) throw std::invalid_argument("empty band index in '" + std::string(all) + "'");
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw std::invalid_argument("band index must look like u:v, got '" + std::string(item) +
                                  "'");
    }
    positions.push_back({parse_index(item.substr(0, colon)), parse_index(item.substr(colon + 1))});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return from_positions(std::move(positions));
}

std::string BandSelector::to_string() const {
  std::ostringstream os;
  for (std::size_t t = 0; t < positions_.size(); ++t) {
    if (t) os << ',';
    os << positions_[t].u << ':' << positions_[t].v;
  }
  return os.str();
}

std::vector<Block> partition_blocks(const GrayImage& img) { return partition_impl(img); }
std::vector<Block> partition_blocks(const RealImage& img) { return partition_impl(img); }

GrayImage assemble_image(std::span<const Block> blocks, std::size_t width, std::size_t height) {
  return assemble_impl<std::uint8_t>(blocks, width, height, quantize_pixel);
}

RealImage assemble_real_image(std::span<const Block> blocks, std::size_t width,
                              std::size_t height) {
  return assemble_impl<double>(blocks, width, height, [](double v) { return v; });
}

CoefBlock dct2(const Block& block) {
  const Basis& c = dct_basis();
  // Rows first: tmp(i, v) = sum_j c[v][j] f(i, j); then columns.
  Block tmp;
  for (std::size_t i = 0; i < kBlockSize; ++i) {
    for (std::size_t v = 0; v < kBlockSize; ++v) {
      double acc = 0.0;
      for (std::size_t j = 0; j < kBlockSize; ++j) acc += c[v][j] * block(i, j);
      tmp(i, v) = acc;
    }
  }
  CoefBlock out;
  for (std::size_t u = 0; u < kBlockSize; ++u) {
    for (std::size_t v = 0; v < kBlockSize; ++v) {
      double acc = 0.0;
      for (std::size_t i = 0; i < kBlockSize; ++i) acc += c[u][i] * tmp(i, v);
      out(u, v) = acc;
    }
  }
  return out;
}

Block idct2(const CoefBlock& coef) {
  const Basis& c = dct_basis();
  Block tmp;
  for (std::size_t u = 0; u < kBlockSize; ++u) {
    for (std::size_t j = 0; j < kBlockSize; ++j) {
      double acc = 0.0;
      for (std::size_t v = 0; v < kBlockSize; ++v) acc += c[v][j] * coef(u, v);
      tmp(u, j) = acc;
    }
  }
  Block out;
  for (std::size_t i = 0; i < kBlockSize; ++i) {
    for (std::size_t j = 0; j < kBlockSize; ++j) {
      double acc = 0.0;
      for (std::size_t u = 0; u < kBlockSize; ++u) acc += c[u][i] * tmp(u, j);
      out(i, j) = acc;
    }
  }
  return out;
}

std::vector<double> extract_low_band(const CoefBlock& coef, const BandSelector& sel) {
  std::vector<double> band;
  band.reserve(sel.band_len());
  for (const auto& p : sel.positions()) band.push_back(coef(p.u, p.v));
  return band;
}

CoefBlock insert_low_band(const CoefBlock& coef, std::span<const double> band,
                          const BandSelector& sel) {
  if (band.size() != sel.band_len()) {
    throw std::invalid_argument("band vector length " + std::to_string(band.size()) +
                                " does not match band length " +
                                std::to_string(sel.band_len()));
  }
  CoefBlock out = coef;
  const auto positions = sel.positions();
  for (std::size_t t = 0; t < band.size(); ++t) out(positions[t].u, positions[t].v) = band[t];
  return out;
}

}  // namespace wmark
