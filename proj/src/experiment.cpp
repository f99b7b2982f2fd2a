#include "wmark/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wmark {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

std::string one_line(std::string s) {
  std::ranges::replace(s, '\n', ' ');
  return s;
}

}  // namespace

bool Evaluation::any_failed() const {
  return std::ranges::any_of(rows, [](const ReportRow& r) { return r.failed(); });
}

std::vector<AttackSpec> default_attack_grid() {
  const char* const specs[] = {
      "jpeg:q=70",   "jpeg:q=50",        "jpeg:q=20",   "jpeg:q=10",
      "gauss-noise:v=0.01", "salt-pepper:d=0.01", "sharpen", "rotate:deg=1",
      "median:n=3",  "average:n=3",      "gauss-filter:n=3,sigma=0.5", "crop",
  };
  std::vector<AttackSpec> grid;
  for (const char* s : specs) grid.push_back(AttackSpec::parse(s));
  return grid;
}

std::vector<AttackSpec> jpeg_sweep(std::span<const int> qualities) {
  std::vector<AttackSpec> out;
  for (int q : qualities) out.push_back(AttackSpec::parse("jpeg:q=" + std::to_string(q)));
  return out;
}

ReportRow run_attack_row(const GrayImage& cover, const GrayImage& watermarked,
                         const WatermarkBits& w, const AttackSpec& spec,
                         const EvaluationConfig& config) {
  ReportRow row;
  row.attack = spec.name();
  row.params = spec.params();
  const auto start = std::chrono::steady_clock::now();
  try {
    const GrayImage attacked = apply_attack(watermarked, spec, config.seed);
    row.psnr_db = psnr(watermarked, attacked, config.peak);
    const RawExtraction got = extract(cover, attacked, config.embed);
    row.nc = nc(w, got.bits);
  } catch (const std::exception& e) {
    row.error = one_line(e.what());
  }
  row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

Evaluation evaluate(const GrayImage& cover, const WatermarkBits& w, const EvaluationConfig& config) {
  Evaluation result;
  result.watermarked = embed(cover, w, config.embed);
  result.embed_psnr_db = psnr(cover, result.watermarked, config.peak);

  if (config.parallel) {
    std::vector<std::future<ReportRow>> pending;
    for (const AttackSpec& spec : config.attacks) {
      pending.push_back(std::async(std::launch::async, [&, spec] {
        return run_attack_row(cover, result.watermarked, w, spec, config);
      }));
    }
    for (auto& f : pending) result.rows.push_back(f.get());
  } else {
    for (const AttackSpec& spec : config.attacks) {
      result.rows.push_back(run_attack_row(cover, result.watermarked, w, spec, config));
    }
  }
  return result;
}

std::vector<AlphaRow> sweep_alpha(const GrayImage& cover, const WatermarkBits& w,
                                  std::span<const double> alphas, const BandSelector& band,
                                  PeakMode peak) {
  if (alphas.empty()) throw std::invalid_argument("alpha list is empty");
  std::vector<AlphaRow> rows;
  for (double alpha : alphas) {
    const EmbedParams params{alpha, band};
    const GrayImage marked = embed(cover, w, params);
    AlphaRow row{alpha, psnr(cover, marked, peak), std::nullopt};
    const RawExtraction got = extract(cover, marked, params);
    if (got.bits.ones() > 0) row.nc = nc(w, got.bits);
    rows.push_back(row);
  }
  return rows;
}

std::string format_fixed(double value, int decimals) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << value;
  return os.str();
}

void write_report_csv(std::ostream& os, std::span<const ReportRow> rows, bool timing) {
  os << "attack,params,psnr_db,nc,ms\n";
  for (const ReportRow& r : rows) {
    os << csv_field(r.attack) << ',' << csv_field(r.params) << ',';
    if (r.failed()) {
      os << (r.psnr_db ? format_fixed(*r.psnr_db, 4) : std::string("nan")) << ','
         << csv_field("error: " + r.error);
    } else {
      os << format_fixed(*r.psnr_db, 4) << ',' << format_fixed(*r.nc, 6);
    }
    os << ',' << (timing ? format_fixed(r.ms, 1) : std::string("0")) << '\n';
  }
}

void write_alpha_csv(std::ostream& os, std::span<const AlphaRow> rows) {
  os << "alpha,psnr_db,nc\n";
  for (const AlphaRow& r : rows) {
    std::ostringstream alpha;
    alpha << r.alpha;
    os << alpha.str() << ',' << format_fixed(r.psnr_db, 4) << ','
       << (r.nc ? format_fixed(*r.nc, 6) : std::string("undefined")) << '\n';
  }
}

}  // namespace wmark
