#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "wmark/transforms.hpp"

using namespace wmark;

namespace {

double max_abs_diff(const Block& a, const Block& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < kBlockArea; ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
  return m;
}

double max_abs_diff(const CoefBlock& a, const CoefBlock& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < kBlockArea; ++k) m = std::max(m, std::abs(a.coeffs[k] - b.coeffs[k]));
  return m;
}

}  // namespace

TEST_CASE("partition_blocks counts and orders blocks row-major") {
  CHECK(partition_blocks(GrayImage(512, 512)).size() == 4096);

  GrayImage one(8, 8);
  std::iota(one.pixels().begin(), one.pixels().end(), std::uint8_t{0});
  const auto single = partition_blocks(one);
  REQUIRE(single.size() == 1);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(single[0](i, j) == one.at(j, i));

  GrayImage halves(16, 8);
  for (std::size_t y = 0; y < 8; ++y)
    for (std::size_t x = 8; x < 16; ++x) halves.at(x, y) = 255;
  const auto blocks = partition_blocks(halves);
  REQUIRE(blocks.size() == 2);
  CHECK(std::ranges::all_of(blocks[0].values, [](double v) { return v == 0.0; }));
  CHECK(std::ranges::all_of(blocks[1].values, [](double v) { return v == 255.0; }));
}

TEST_CASE("partition_blocks rejects unaligned images") {
  CHECK_THROWS_AS(partition_blocks(GrayImage(500, 512)), std::invalid_argument);
  CHECK_THROWS_AS(partition_blocks(GrayImage(8, 12)), std::invalid_argument);
  CHECK_THROWS_AS(partition_blocks(GrayImage(0, 0)), std::invalid_argument);
}

TEST_CASE("assemble_image clamps, rounds and inverts partition") {
  std::mt19937_64 rng(11);
  const GrayImage img = oracle::random_image(64, 40, rng);
  CHECK(assemble_image(partition_blocks(img), 64, 40) == img);

  Block b;
  b(0, 0) = 300.0;
  b(0, 1) = -4.2;
  b(0, 2) = 99.5;
  b(0, 3) = 99.49;
  const std::vector<Block> blocks{b};
  const GrayImage out = assemble_image(blocks, 8, 8);
  CHECK(out.at(0, 0) == 255);
  CHECK(out.at(1, 0) == 0);
  CHECK(out.at(2, 0) == 100);
  CHECK(out.at(3, 0) == 99);

  CHECK_THROWS_AS(assemble_image(blocks, 16, 8), std::invalid_argument);
}

TEST_CASE("dct2 of constant and zero blocks") {
  Block constant;
  constant.values.fill(100.0);
  const CoefBlock f = dct2(constant);
  CHECK(f(0, 0) == doctest::Approx(800.0).epsilon(1e-12));
  for (std::size_t k = 1; k < kBlockArea; ++k) CHECK(std::abs(f.coeffs[k]) < 1e-10);

  CHECK(dct2(Block{}) == CoefBlock{});
  CHECK(idct2(CoefBlock{}) == Block{});

  CoefBlock dc;
  dc(0, 0) = 800.0;
  const Block back = idct2(dc);
  for (double v : back.values) CHECK(v == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("dct2 matches the literal double-sum definition") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Block b = oracle::random_block(rng);
    CHECK(max_abs_diff(dct2(b), oracle::naive_dct2(b)) < 1e-9);
  }
}

TEST_CASE("DCT is orthonormal: roundtrips and Parseval") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Block b = oracle::random_block(rng);
    CHECK(max_abs_diff(idct2(dct2(b)), b) < 1e-9);

    CoefBlock c;
    for (auto& v : c.coeffs) v = std::uniform_real_distribution<double>(-1000, 1000)(rng);
    CHECK(max_abs_diff(dct2(idct2(c)), c) < 1e-9);

    const CoefBlock f = dct2(b);
    const double spatial = std::inner_product(b.values.begin(), b.values.end(), b.values.begin(), 0.0);
    const double spectral = std::inner_product(f.coeffs.begin(), f.coeffs.end(), f.coeffs.begin(), 0.0);
    CHECK(std::abs(spatial - spectral) <= 1e-6 * spatial);
  }
}

TEST_CASE("zig-zag order matches the JPEG natural-order table") {
  const auto& zz = zigzag_order();
  for (std::size_t t = 0; t < kBlockArea; ++t) {
    CHECK(static_cast<int>(zz[t].u * 8 + zz[t].v) == oracle::kJpegNaturalOrder[t]);
  }
  const auto band = BandSelector::zigzag_prefix(6);
  const std::vector<BlockPos> expected{{0, 0}, {0, 1}, {1, 0}, {2, 0}, {1, 1}, {0, 2}};
  CHECK(std::ranges::equal(band.positions(), expected));
}

TEST_CASE("extract_low_band reads in zig-zag order") {
  const auto band = BandSelector::zigzag_prefix(6);

  CoefBlock dc_only;
  dc_only(0, 0) = 9.0;
  CHECK(extract_low_band(dc_only, band) == std::vector<double>{9, 0, 0, 0, 0, 0});

  CoefBlock ranked;
  for (int t = 0; t < 64; ++t) ranked.coeffs[static_cast<std::size_t>(oracle::kJpegNaturalOrder[t])] = t;
  CHECK(extract_low_band(ranked, band) == std::vector<double>{0, 1, 2, 3, 4, 5});

  const auto full = extract_low_band(ranked, BandSelector::zigzag_prefix(64));
  std::vector<double> scan(64);
  std::iota(scan.begin(), scan.end(), 0.0);
  CHECK(full == scan);
}

TEST_CASE("insert_low_band replaces exactly the band positions") {
  std::mt19937_64 rng(99);
  const auto band = BandSelector::zigzag_prefix(6);
  std::uniform_real_distribution<double> dist(-50, 50);

  for (int trial = 0; trial < 50; ++trial) {
    CoefBlock c;
    for (auto& v : c.coeffs) v = dist(rng);
    CHECK(insert_low_band(c, extract_low_band(c, band), band) == c);

    std::vector<double> v(6);
    for (auto& x : v) x = dist(rng);
    const CoefBlock out = insert_low_band(c, v, band);
    for (int t = 0; t < 64; ++t) {
      const auto raster = static_cast<std::size_t>(oracle::kJpegNaturalOrder[t]);
      CHECK(out.coeffs[raster] == (t < 6 ? v[static_cast<std::size_t>(t)] : c.coeffs[raster]));
    }
    CHECK(extract_low_band(out, band) == v);
  }

  CoefBlock c;
  c.coeffs.fill(3.0);
  const CoefBlock zeroed = insert_low_band(c, std::vector<double>(6, 0.0), band);
  CHECK(extract_low_band(zeroed, BandSelector::zigzag_prefix(64)) ==
        [] {
          std::vector<double> e(64, 3.0);
          std::fill_n(e.begin(), 6, 0.0);
          return e;
        }());

  CHECK_THROWS_AS(insert_low_band(c, std::vector<double>(5, 0.0), band), std::invalid_argument);
}

TEST_CASE("BandSelector validation and parsing") {
  CHECK_THROWS_AS(BandSelector::zigzag_prefix(0), std::invalid_argument);
  CHECK_THROWS_AS(BandSelector::zigzag_prefix(65), std::invalid_argument);
  CHECK_THROWS_AS(BandSelector::from_positions({{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(BandSelector::from_positions({{8, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(BandSelector::parse("0:1,x"), std::invalid_argument);
  CHECK_THROWS_AS(BandSelector::parse("0:1,"), std::invalid_argument);

  const auto parsed = BandSelector::parse("0:1,1:0,2:0,1:1,0:2,0:3");
  CHECK(parsed.band_len() == 6);
  CHECK(parsed.to_string() == "0:1,1:0,2:0,1:1,0:2,0:3");
  CHECK(BandSelector::parse(BandSelector::zigzag_prefix(6).to_string()) == BandSelector::zigzag_prefix(6));
}
