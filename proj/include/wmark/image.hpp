#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wmark {

/// Row-major raster with one sample per pixel.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;
  Raster(std::size_t width, std::size_t height, T fill = T{})
      : width_(width), height_(height), data_(width * height, fill) {}
  Raster(std::size_t width, std::size_t height, std::vector<T> data);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(std::size_t x, std::size_t y) { return data_[y * width_ + x]; }
  const T& at(std::size_t x, std::size_t y) const { return data_[y * width_ + x]; }

  std::span<T> pixels() { return data_; }
  std::span<const T> pixels() const { return data_; }

  bool same_shape(const Raster& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<T> data_;
};

/// 8-bit grayscale image: cover, watermarked and attacked images.
using GrayImage = Raster<std::uint8_t>;

/// Real-valued image used when pixel quantization is bypassed.
using RealImage = Raster<double>;

RealImage to_real(const GrayImage& img);

/// Clamp to [0,255] then round half away from zero.
std::uint8_t quantize_pixel(double value);

GrayImage quantize(const RealImage& img);

}  // namespace wmark
