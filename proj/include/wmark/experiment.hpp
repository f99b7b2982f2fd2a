#pragma once

// Robustness experiments: embed once, attack, extract, score; plus the
// alpha sweep. Reports are plain CSV.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmark/attacks.hpp"
#include "wmark/image.hpp"
#include "wmark/metrics.hpp"
#include "wmark/watermark.hpp"

namespace wmark {

struct ReportRow {
  std::string attack;  ///< attack name, e.g. "jpeg"
  std::string params;  ///< canonical parameters, e.g. "q=50"
  std::optional<double> psnr_db;  ///< watermarked vs attacked image
  std::optional<double> nc;       ///< unset when the row failed
  std::string error;
  double ms = 0.0;

  bool failed() const { return !error.empty(); }
};

struct EvaluationConfig {
  EmbedParams embed;
  std::vector<AttackSpec> attacks;
  std::uint64_t seed = 0;  ///< used by stochastic attacks without their own seed
  PeakMode peak = PeakMode::Fixed255;
  bool parallel = true;
};

struct Evaluation {
  GrayImage watermarked;
  double embed_psnr_db = 0.0;
  std::vector<ReportRow> rows;  ///< same order as EvaluationConfig::attacks

  bool any_failed() const;
};

/// The twelve attacks of the reference robustness table, in table order.
std::vector<AttackSpec> default_attack_grid();

/// JPEG attacks for the given qualities, in the order given.
std::vector<AttackSpec> jpeg_sweep(std::span<const int> qualities);

/// Embeds `w`, then attacks and extracts once per configured attack. Row
/// failures (e.g. an all-zero extraction making NC undefined) are recorded
/// in the row and do not stop the run.
Evaluation evaluate(const GrayImage& cover, const WatermarkBits& w, const EvaluationConfig& config);

/// Scores one attack against an already-watermarked image.
ReportRow run_attack_row(const GrayImage& cover, const GrayImage& watermarked,
                         const WatermarkBits& w, const AttackSpec& spec,
                         const EvaluationConfig& config);

struct AlphaRow {
  double alpha = 0.0;
  double psnr_db = 0.0;
  std::optional<double> nc;  ///< unset if the extraction was all zeros
};

/// Embeds and extracts without attack for each alpha.
std::vector<AlphaRow> sweep_alpha(const GrayImage& cover, const WatermarkBits& w,
                                  std::span<const double> alphas, const BandSelector& band,
                                  PeakMode peak = PeakMode::Fixed255);

/// Header `attack,params,psnr_db,nc,ms`. With `timing` false the ms column
/// is written as 0 so reports are byte-reproducible.
void write_report_csv(std::ostream& os, std::span<const ReportRow> rows, bool timing = true);

/// Header `alpha,psnr_db,nc`.
void write_alpha_csv(std::ostream& os, std::span<const AlphaRow> rows);

/// Fixed-point formatting used in reports; infinities print as "inf".
std::string format_fixed(double value, int decimals);

}  // namespace wmark
