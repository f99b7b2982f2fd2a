#include "wmark/watermark.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wmark {
namespace {

void check_alpha_for_embed(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw std::invalid_argument("alpha must be finite and >= 0");
  }
}

void check_alpha_for_extract(double alpha) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  if (alpha == 0.0) throw std::domain_error("alpha must be nonzero for extraction");
}

FeatureMatrix features_of(std::span<const CoefBlock> coefs, const BandSelector& band) {
  FeatureMatrix x(static_cast<Eigen::Index>(coefs.size()),
                  static_cast<Eigen::Index>(band.band_len()));
  for (std::size_t k = 0; k < coefs.size(); ++k) {
    const auto row = extract_low_band(coefs[k], band);
    for (std::size_t t = 0; t < row.size(); ++t) {
      x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t)) = row[t];
    }
  }
  return x;
}

std::vector<CoefBlock> forward_blocks(const RealImage& img) {
  const auto blocks = partition_blocks(img);
  std::vector<CoefBlock> coefs(blocks.size());
  std::ranges::transform(blocks, coefs.begin(), dct2);
  return coefs;
}

// Steps shared by the quantized and unquantized embedders: everything up to
// (but not including) writing pixels.
std::vector<Block> embed_blocks(const RealImage& cover, const WatermarkBits& w,
                                const EmbedParams& params) {
  check_alpha_for_embed(params.alpha);
  std::vector<CoefBlock> coefs = forward_blocks(cover);
  if (coefs.size() != w.size()) {
    throw std::invalid_argument("cover holds " + std::to_string(coefs.size()) +
                                " blocks but watermark has " + std::to_string(w.size()) +
                                " bits");
  }

  const FeatureMatrix x = features_of(coefs, params.band);
  const PcaModel model = fit_pca(x);
  ScoreMatrix y = project(model, x);
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    y(i, 0) += params.alpha * static_cast<double>(w[static_cast<std::size_t>(i)]);
  }
  const FeatureMatrix marked = inverse_project(model, y);

  std::vector<Block> out(coefs.size());
  std::vector<double> band(params.band.band_len());
  for (std::size_t k = 0; k < coefs.size(); ++k) {
    for (std::size_t t = 0; t < band.size(); ++t) {
      band[t] = marked(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t));
    }
    out[k] = idct2(insert_low_band(coefs[k], band, params.band));
  }
  return out;
}

}  // namespace

WatermarkBits::WatermarkBits(std::size_t width, std::size_t height,
                             std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (bits_.size() != width_ * height_) {
    throw std::invalid_argument("watermark bit count does not match width*height");
  }
  if (std::ranges::any_of(bits_, [](std::uint8_t b) { return b > 1; })) {
    throw std::invalid_argument("watermark bits must be 0 or 1");
  }
}

WatermarkBits WatermarkBits::from_image(const GrayImage& logo) {
  std::vector<std::uint8_t> bits(logo.size());
  std::ranges::transform(logo.pixels(), bits.begin(),
                         [](std::uint8_t p) -> std::uint8_t { return p != 0 ? 1 : 0; });
  return WatermarkBits(logo.width(), logo.height(), std::move(bits));
}

std::size_t WatermarkBits::ones() const {
  return static_cast<std::size_t>(std::ranges::count(bits_, std::uint8_t{1}));
}

GrayImage WatermarkBits::to_image() const {
  GrayImage img(width_, height_);
  std::ranges::transform(bits_, img.pixels().begin(),
                         [](std::uint8_t b) -> std::uint8_t { return b ? 255 : 0; });
  return img;
}

FeatureMatrix build_features(const RealImage& img, const BandSelector& band) {
  return features_of(forward_blocks(img), band);
}

FeatureMatrix build_features(const GrayImage& img, const BandSelector& band) {
  return build_features(to_real(img), band);
}

GrayImage embed(const GrayImage& cover, const WatermarkBits& w, const EmbedParams& params) {
  const auto blocks = embed_blocks(to_real(cover), w, params);
  return assemble_image(blocks, cover.width(), cover.height());
}

RealImage embed_unquantized(const RealImage& cover, const WatermarkBits& w,
                            const EmbedParams& params) {
  const auto blocks = embed_blocks(cover, w, params);
  return assemble_real_image(blocks, cover.width(), cover.height());
}

RawExtraction extract(const RealImage& cover, const RealImage& suspect,
                      const EmbedParams& params, const std::optional<PcaModel>& model) {
  check_alpha_for_extract(params.alpha);
  if (!cover.same_shape(suspect)) {
    throw std::invalid_argument("cover and suspect dimensions differ");
  }
  const FeatureMatrix x = build_features(cover, params.band);
  const FeatureMatrix x_suspect = build_features(suspect, params.band);
  const PcaModel basis = model ? *model : fit_pca(x);

  const ScoreMatrix y = project(basis, x);
  const ScoreMatrix y_suspect = project(basis, x_suspect);

  RawExtraction out;
  out.values.resize(static_cast<std::size_t>(y.rows()));
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    out.values[static_cast<std::size_t>(i)] = (y_suspect(i, 0) - y(i, 0)) / params.alpha;
  }
  const LogoShape shape = logo_shape_for(cover.width(), cover.height());
  out.bits = binarize(out.values, shape.width, shape.height);
  return out;
}

RawExtraction extract(const GrayImage& cover, const GrayImage& suspect,
                      const EmbedParams& params, const std::optional<PcaModel>& model) {
  return extract(to_real(cover), to_real(suspect), params, model);
}

WatermarkBits binarize(std::span<const double> values, std::size_t width, std::size_t height,
                       double threshold) {
  std::vector<std::uint8_t> bits(values.size());
  std::ranges::transform(values, bits.begin(), [threshold](double v) -> std::uint8_t {
    return v >= threshold ? 1 : 0;
  });
  return WatermarkBits(width, height, std::move(bits));
}

LogoShape logo_shape_for(std::size_t cover_width, std::size_t cover_height) {
  require_block_aligned(cover_width, cover_height);
  return {cover_width / kBlockSize, cover_height / kBlockSize};
}

}  // namespace wmark
