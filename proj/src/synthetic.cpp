#include "wmark/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace wmark::synthetic {
namespace {

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std distributions.
class UnitRng {
 public:
  explicit UnitRng(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// One octave of value noise: random lattice values, smooth interpolation.
class ValueNoise {
 public:
  ValueNoise(std::size_t cells_x, std::size_t cells_y, UnitRng& rng)
      : nx_(cells_x + 2), ny_(cells_y + 2), lattice_(nx_ * ny_) {
    for (auto& v : lattice_) v = rng.range(-1.0, 1.0);
  }

  // u, v in lattice units.
  double sample(double u, double v) const {
    const auto i = static_cast<std::size_t>(u);
    const auto j = static_cast<std::size_t>(v);
    const double fu = smoothstep(u - static_cast<double>(i));
    const double fv = smoothstep(v - static_cast<double>(j));
    const double a = at(i, j) + fu * (at(i + 1, j) - at(i, j));
    const double b = at(i, j + 1) + fu * (at(i + 1, j + 1) - at(i, j + 1));
    return a + fv * (b - a);
  }

 private:
  double at(std::size_t i, std::size_t j) const { return lattice_[j * nx_ + i]; }
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> lattice_;
};

struct Shape {
  bool ellipse;
  double cx, cy, rx, ry, angle;
  double level, slope_x, slope_y;
  double opacity;
  // Oriented grating giving the shape a surface texture.
  double texture, freq, texture_angle;
};

// Signed distance-like coverage in [0, 1] with a one-pixel soft edge.
double coverage(const Shape& s, double x, double y) {
  const double c = std::cos(s.angle);
  const double sn = std::sin(s.angle);
  const double dx = x - s.cx;
  const double dy = y - s.cy;
  const double lx = (c * dx + sn * dy) / s.rx;
  const double ly = (-sn * dx + c * dy) / s.ry;
  double d = 0.0;
  if (s.ellipse) {
    d = (std::sqrt(lx * lx + ly * ly) - 1.0) * std::min(s.rx, s.ry);
  } else {
    d = std::max((std::abs(lx) - 1.0) * s.rx, (std::abs(ly) - 1.0) * s.ry);
  }
  return std::clamp(0.5 - d, 0.0, 1.0);
}

}  // namespace

GrayImage natural_scene(std::size_t width, std::size_t height, std::uint64_t seed) {
  UnitRng rng(seed);
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);

  // Octaves from 128-pixel down to 2-pixel features; amplitude falls off
  // geometrically, which gives the familiar power-law spectrum.
  struct Octave {
    ValueNoise noise;
    double cell;
    double amplitude;
  };
  std::vector<Octave> octaves;
  double amplitude = 0.2;
  for (double cell = 128.0; cell >= 1.0; cell /= 2.0) {
    const auto cx = static_cast<std::size_t>(std::ceil(w / cell));
    const auto cy = static_cast<std::size_t>(std::ceil(h / cell));
    octaves.push_back({ValueNoise(cx, cy, rng), cell, amplitude});
    amplitude *= 0.66;
  }

  std::vector<Shape> shapes;
  for (int i = 0; i < 18; ++i) {
    Shape s{};
    s.ellipse = rng.next() < 0.55;
    s.cx = rng.range(0.0, w);
    s.cy = rng.range(0.0, h);
    s.rx = rng.range(0.04, 0.22) * w;
    s.ry = rng.range(0.04, 0.22) * h;
    s.angle = rng.range(0.0, 3.14159);
    s.level = rng.range(0.15, 0.85);
    s.slope_x = rng.range(-0.4, 0.4) / w;
    s.slope_y = rng.range(-0.4, 0.4) / h;
    s.opacity = rng.range(0.6, 1.0);
    s.texture = rng.next() < 0.5 ? rng.range(0.05, 0.2) : 0.0;
    s.freq = rng.range(0.4, 2.0);
    s.texture_angle = rng.range(0.0, 3.14159);
    shapes.push_back(s);
  }
  const double light_x = rng.range(-0.25, 0.25);
  const double light_y = rng.range(0.1, 0.35);

  GrayImage img(width, height);
  for (std::size_t py = 0; py < height; ++py) {
    for (std::size_t px = 0; px < width; ++px) {
      const double x = static_cast<double>(px);
      const double y = static_cast<double>(py);
      double value = 0.5 + light_x * (x / w - 0.5) + light_y * (0.5 - y / h);
      for (const Shape& s : shapes) {
        const double a = coverage(s, x, y) * s.opacity;
        if (a <= 0.0) continue;
        double shade = s.level + s.slope_x * (x - s.cx) + s.slope_y * (y - s.cy);
        if (s.texture > 0.0) {
          const double along = std::cos(s.texture_angle) * x + std::sin(s.texture_angle) * y;
          shade += s.texture * std::sin(s.freq * along);
        }
        value = (1.0 - a) * value + a * shade;
      }
      for (const Octave& o : octaves) value += o.amplitude * o.noise.sample(x / o.cell, y / o.cell);
      img.at(px, py) = quantize_pixel(16.0 + 219.0 * std::clamp(value, 0.0, 1.0));
    }
  }
  return img;
}

WatermarkBits emblem_logo(std::size_t width, std::size_t height) {
  std::vector<std::uint8_t> bits(width * height);
  const double cx = (static_cast<double>(width) - 1.0) / 2.0;
  const double cy = (static_cast<double>(height) - 1.0) / 2.0;
  const double outer = 0.445 * static_cast<double>(std::min(width, height));
  const double inner = 0.19 * static_cast<double>(std::min(width, height));
  const double dot = 0.08 * static_cast<double>(std::min(width, height));
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double r = std::hypot(static_cast<double>(x) - cx, static_cast<double>(y) - cy);
      const bool ring = r < outer && r >= inner;
      bits[y * width + x] = (ring || r < dot) ? 1 : 0;
    }
  }
  return WatermarkBits(width, height, std::move(bits));
}

}  // namespace wmark::synthetic
