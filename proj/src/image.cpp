#include "wmark/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wmark {

template <typename T>
Raster<T>::Raster(std::size_t width, std::size_t height, std::vector<T> data)
    : width_(width), height_(height), data_(std::move(data)) {
  if (data_.size() != width_ * height_) {
    throw std::invalid_argument("raster data length does not match width*height");
  }
}

template class Raster<std::uint8_t>;
template class Raster<double>;

RealImage to_real(const GrayImage& img) {
  std::vector<double> data(img.pixels().begin(), img.pixels().end());
  return RealImage(img.width(), img.height(), std::move(data));
}

std::uint8_t quantize_pixel(double value) {
  // NaN maps to 0 rather than propagating into an integer conversion.
  if (!(value > 0.0)) return 0;
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::round(value));
}

GrayImage quantize(const RealImage& img) {
  GrayImage out(img.width(), img.height());
  std::ranges::transform(img.pixels(), out.pixels().begin(), quantize_pixel);
  return out;
}

}  // namespace wmark
