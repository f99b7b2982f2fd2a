#include <doctest.h>

#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "wmark/metrics.hpp"

using namespace wmark;

TEST_CASE("mse basics") {
  GrayImage a(16, 8, 40);
  CHECK(mse(a, a) == 0.0);
  GrayImage b(16, 8, 56);
  CHECK(mse(a, b) == 256.0);
  CHECK(mse(b, a) == 256.0);
  CHECK_THROWS_AS(mse(a, GrayImage(8, 8)), std::invalid_argument);
}

TEST_CASE("mse matches a double-loop oracle and is symmetric") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    const GrayImage a = oracle::random_image(40, 24, rng);
    const GrayImage b = oracle::random_image(40, 24, rng);
    CHECK(std::abs(mse(a, b) - oracle::naive_mse(a, b)) < 1e-9);
    CHECK(mse(a, b) == mse(b, a));
  }
}

TEST_CASE("psnr values and peak modes") {
  CHECK(psnr_from_mse(256.0) == doctest::Approx(24.0484).epsilon(1e-5));
  GrayImage a(8, 8, 10);
  CHECK(std::isinf(psnr(a, a)));
  CHECK(psnr(a, a) > 0);

  GrayImage b(8, 8, 26);
  CHECK(psnr(a, b) == doctest::Approx(24.0484).epsilon(1e-5));
  // Reference max is 10 here, so the literal peak gives 10 log10(100/256).
  CHECK(psnr(a, b, PeakMode::ReferenceMax) == doctest::Approx(10.0 * std::log10(100.0 / 256.0)));

  double last = std::numeric_limits<double>::infinity();
  for (double e = 0.01; e < 1000.0; e *= 1.7) {
    CHECK(psnr_from_mse(e) < last);
    last = psnr_from_mse(e);
  }
}

TEST_CASE("nc values and undefined cases") {
  const WatermarkBits w(4, 1, {1, 1, 0, 0});
  const WatermarkBits v(4, 1, {1, 0, 1, 0});
  CHECK(nc(w, w) == 1.0);
  CHECK(nc(w, v) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(nc(w, v) == nc(v, w));
  const WatermarkBits zero(4, 1, {0, 0, 0, 0});
  CHECK_THROWS_AS(nc(w, zero), std::domain_error);
  CHECK_THROWS_AS(nc(zero, w), std::domain_error);
  CHECK_THROWS_AS(nc(w, WatermarkBits(2, 1, {1, 1})), std::invalid_argument);
}

TEST_CASE("nc equals the popcount form on random binary pairs") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 1000; ++t) {
    std::vector<std::uint8_t> a(256), b(256);
    std::uint64_t words_a[4] = {}, words_b[4] = {};
    for (std::size_t i = 0; i < 256; ++i) {
      a[i] = rng() & 1U;
      b[i] = rng() & 1U;
      words_a[i / 64] |= std::uint64_t{a[i]} << (i % 64);
      words_b[i / 64] |= std::uint64_t{b[i]} << (i % 64);
    }
    int both = 0, ca = 0, cb = 0;
    for (int k = 0; k < 4; ++k) {
      both += std::popcount(words_a[k] & words_b[k]);
      ca += std::popcount(words_a[k]);
      cb += std::popcount(words_b[k]);
    }
    if (ca == 0 || cb == 0) continue;
    const double expected = both / std::sqrt(static_cast<double>(ca) * static_cast<double>(cb));
    CHECK(nc(WatermarkBits(16, 16, a), WatermarkBits(16, 16, b)) == expected);
  }
}
