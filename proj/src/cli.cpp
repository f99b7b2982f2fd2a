#include "wmark/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "wmark/attacks.hpp"
#include "wmark/experiment.hpp"
#include "wmark/metrics.hpp"
#include "wmark/pca.hpp"
#include "wmark/pnm.hpp"
#include "wmark/synthetic.hpp"
#include "wmark/watermark.hpp"

namespace wmark::cli {
namespace {

struct BandOptions {
  std::size_t band_len = 6;
  std::string band_indices;

  BandSelector selector() const {
    return band_indices.empty() ? BandSelector::zigzag_prefix(band_len)
                                : BandSelector::parse(band_indices);
  }
};

void add_band_options(CLI::App* cmd, BandOptions& opts) {
  auto* len = cmd->add_option("--band-len", opts.band_len,
                              "Length of the zig-zag band prefix (DC included)")
                  ->capture_default_str();
  cmd->add_option("--band-indices", opts.band_indices,
                  "Explicit band positions as u:v,u:v,... (row:column)")
      ->excludes(len);
}

PeakMode peak_from(const std::string& name) {
  return name == "cover" ? PeakMode::ReferenceMax : PeakMode::Fixed255;
}

void add_peak_option(CLI::App* cmd, std::string& peak) {
  cmd->add_option("--peak", peak, "PSNR peak: fixed (255) or cover (max cover pixel)")
      ->check(CLI::IsMember({"fixed", "cover"}))
      ->capture_default_str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("WMARK_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t seed = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw std::invalid_argument("WMARK_SEED is not an unsigned integer: '" + std::string(text) + "'");
    }
    return seed;
  }
  return 0;
}

void require_logo_fits(const GrayImage& cover, const WatermarkBits& w) {
  require_block_aligned(cover.width(), cover.height());
  if (cover.width() != kBlockSize * w.width() || cover.height() != kBlockSize * w.height()) {
    throw std::invalid_argument("cover must be 8x the watermark size in each axis (cover " +
                                std::to_string(cover.width()) + "x" + std::to_string(cover.height()) +
                                ", watermark " + std::to_string(w.width()) + "x" +
                                std::to_string(w.height()) + ")");
  }
}

// CLI11 would read an empty list item as 0.
const CLI::Validator kNonEmptyItem(
    [](std::string& item) { return item.empty() ? std::string("empty list item") : std::string(); }, "");

std::vector<AttackSpec> parse_attack_list(const std::string& list) {
  if (list == "default") return default_attack_grid();
  std::vector<AttackSpec> out;
  std::string_view rest = list;
  while (!rest.empty()) {
    const auto semi = rest.find(';');
    const std::string_view item = rest.substr(0, semi);
    if (!item.empty()) out.push_back(AttackSpec::parse(item));
    if (semi == std::string_view::npos) break;
    rest.remove_prefix(semi + 1);
  }
  return out;
}

// Writes to the file, or to `fallback` when the path is "-".
template <typename Writer>
void write_text(const std::string& path, std::ostream& fallback, Writer&& writer) {
  if (path == "-") {
    writer(fallback);
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  writer(os);
  if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

struct EmbedCmd {
  std::string cover, wm, out, save_model, peak = "fixed";
  double alpha = 30.0;
  BandOptions band;
};

struct ExtractCmd {
  std::string cover, suspect, out, ref, model;
  double alpha = 30.0;
  BandOptions band;
};

struct AttackCmd {
  std::string in;
  std::vector<std::string> specs, outs;
  std::optional<std::uint64_t> seed;
};

struct EvaluateCmd {
  std::string cover, wm, attacks = "default", report = "-", watermarked_out, peak = "fixed";
  std::vector<int> jpeg_sweep;
  double alpha = 30.0;
  std::optional<std::uint64_t> seed;
  bool no_timing = false;
  BandOptions band;
};

struct SweepCmd {
  std::string cover, wm, report = "-", peak = "fixed";
  std::vector<double> alphas;
  BandOptions band;
};

struct SynthCmd {
  std::string cover_out, logo_out;
  std::size_t size = 512;
  std::uint64_t seed = 2016;
};

int do_embed(const EmbedCmd& c, std::ostream& out) {
  const GrayImage cover = pnm::read_pgm(c.cover);
  const WatermarkBits w = pnm::read_logo(c.wm);
  require_logo_fits(cover, w);
  const EmbedParams params{c.alpha, c.band.selector()};
  const GrayImage marked = embed(cover, w, params);
  pnm::write_pgm(c.out, marked);
  if (!c.save_model.empty()) {
    const PcaModel model = fit_pca(build_features(cover, params.band));
    write_text(c.save_model, out, [&](std::ostream& os) { save_model(os, model); });
  }
  out << "PSNR=" << format_fixed(psnr(cover, marked, peak_from(c.peak)), 2) << "dB"
      << " capacity=" << capacity_bits(cover.width(), cover.height()) << "bits"
      << " alpha=" << c.alpha << '\n';
  return kOk;
}

int do_extract(const ExtractCmd& c, std::ostream& out, std::ostream& err) {
  const GrayImage cover = pnm::read_pgm(c.cover);
  const GrayImage suspect = pnm::read_pgm(c.suspect);
  std::optional<PcaModel> model;
  if (!c.model.empty()) {
    std::ifstream is(c.model);
    if (!is) throw std::runtime_error("cannot open model '" + c.model + "'");
    model = load_model(is);
  }
  const EmbedParams params{c.alpha, c.band.selector()};
  const RawExtraction got = extract(cover, suspect, params, model);
  pnm::write_logo(c.out, got.bits);
  out << "recovered " << got.bits.width() << "x" << got.bits.height() << " logo, "
      << got.bits.ones() << " bits set\n";
  if (!c.ref.empty()) {
    const WatermarkBits ref = pnm::read_logo(c.ref);
    if (ref.width() != got.bits.width() || ref.height() != got.bits.height()) {
      throw std::invalid_argument("reference logo size does not match the recovered logo");
    }
    try {
      out << "NC=" << format_fixed(nc(ref, got.bits), 4) << '\n';
    } catch (const std::domain_error& e) {
      err << "error: " << e.what() << '\n';
      return kMathDomain;
    }
  }
  return kOk;
}

int do_attack(const AttackCmd& c, std::ostream& out) {
  std::vector<AttackSpec> specs;
  for (const auto& s : c.specs) specs.push_back(AttackSpec::parse(s));
  if (c.outs.size() != specs.size()) {
    throw std::invalid_argument("need exactly one --out per --spec (" + std::to_string(specs.size()) +
                                " specs, " + std::to_string(c.outs.size()) + " outputs)");
  }
  const GrayImage img = pnm::read_pgm(c.in);
  const std::uint64_t seed = resolve_seed(c.seed);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const GrayImage attacked = apply_attack(img, specs[i], seed);
    pnm::write_pgm(c.outs[i], attacked);
    out << specs[i].to_string() << " -> " << c.outs[i] << " PSNR="
        << format_fixed(psnr(img, attacked), 2) << "dB\n";
  }
  return kOk;
}

int do_evaluate(const EvaluateCmd& c, std::ostream& out, std::ostream& err) {
  const GrayImage cover = pnm::read_pgm(c.cover);
  const WatermarkBits w = pnm::read_logo(c.wm);
  require_logo_fits(cover, w);

  EvaluationConfig config;
  config.embed = EmbedParams{c.alpha, c.band.selector()};
  config.attacks = parse_attack_list(c.attacks);
  for (const auto& spec : jpeg_sweep(c.jpeg_sweep)) config.attacks.push_back(spec);
  config.seed = resolve_seed(c.seed);
  config.peak = peak_from(c.peak);

  const Evaluation result = evaluate(cover, w, config);
  if (!c.watermarked_out.empty()) pnm::write_pgm(c.watermarked_out, result.watermarked);
  write_text(c.report, out, [&](std::ostream& os) {
    write_report_csv(os, result.rows, !c.no_timing);
  });
  if (c.report != "-") {
    out << "embed PSNR=" << format_fixed(result.embed_psnr_db, 2) << "dB, " << result.rows.size()
        << " attacks -> " << c.report << '\n';
  }
  if (result.any_failed()) {
    err << "some attack rows failed; see the nc column\n";
    return kFailure;
  }
  return kOk;
}

int do_sweep(const SweepCmd& c, std::ostream& out) {
  if (c.alphas.empty()) throw std::invalid_argument("--alphas must list at least one value");
  const GrayImage cover = pnm::read_pgm(c.cover);
  const WatermarkBits w = pnm::read_logo(c.wm);
  require_logo_fits(cover, w);
  const auto rows = sweep_alpha(cover, w, c.alphas, c.band.selector(), peak_from(c.peak));
  write_text(c.report, out, [&](std::ostream& os) { write_alpha_csv(os, rows); });
  return kOk;
}

int do_synth(const SynthCmd& c, std::ostream& out) {
  if (c.size == 0 || c.size % kBlockSize != 0) {
    throw std::invalid_argument("--size must be a positive multiple of 8");
  }
  const GrayImage cover = synthetic::natural_scene(c.size, c.size, c.seed);
  const WatermarkBits logo = synthetic::emblem_logo(c.size / kBlockSize, c.size / kBlockSize);
  pnm::write_pgm(c.cover_out, cover);
  pnm::write_logo(c.logo_out, logo);
  out << "wrote " << c.cover_out << " (" << c.size << "x" << c.size << ") and " << c.logo_out
      << " (" << logo.ones() << " of " << logo.size() << " bits set)\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DCT+PCA grayscale image watermarking toolkit", "wmark"};
  app.require_subcommand(1);

  EmbedCmd embed_cmd;
  auto* embed_app = app.add_subcommand("embed", "Embed a binary logo into a cover image");
  embed_app->add_option("--cover", embed_cmd.cover, "Cover image (PGM)")->required();
  embed_app->add_option("--wm", embed_cmd.wm, "Binary logo (PBM or PGM), 1/8 the cover size")->required();
  embed_app->add_option("--out", embed_cmd.out, "Watermarked image (PGM)")->required();
  embed_app->add_option("--alpha", embed_cmd.alpha, "Embedding strength")->capture_default_str();
  embed_app->add_option("--save-model", embed_cmd.save_model, "Write the cover's PCA model here");
  add_peak_option(embed_app, embed_cmd.peak);
  add_band_options(embed_app, embed_cmd.band);

  ExtractCmd extract_cmd;
  auto* extract_app = app.add_subcommand("extract", "Recover the logo (needs the original cover)");
  extract_app->add_option("--cover", extract_cmd.cover, "Original cover image (PGM)")->required();
  extract_app->add_option("--suspect,--in", extract_cmd.suspect, "Watermarked or attacked image (PGM)")
      ->required();
  extract_app->add_option("--out", extract_cmd.out, "Recovered logo (.pbm, or .pgm)")->required();
  extract_app->add_option("--alpha", extract_cmd.alpha, "Embedding strength")->capture_default_str();
  extract_app->add_option("--ref", extract_cmd.ref, "Original logo; prints NC when given");
  extract_app->add_option("--model", extract_cmd.model, "Use a saved PCA model instead of refitting");
  add_band_options(extract_app, extract_cmd.band);

  AttackCmd attack_cmd;
  auto* attack_app = app.add_subcommand("attack", "Apply attacks to an image");
  attack_app->add_option("--in", attack_cmd.in, "Input image (PGM)")->required();
  attack_app->add_option("--spec", attack_cmd.specs, "Attack spec, e.g. jpeg:q=50 (repeatable)")
      ->required();
  attack_app->add_option("--out", attack_cmd.outs, "Output image, one per --spec")->required();
  attack_app->add_option("--seed", attack_cmd.seed, "Seed for stochastic attacks (default $WMARK_SEED or 0)");

  EvaluateCmd eval_cmd;
  auto* eval_app = app.add_subcommand("evaluate", "Embed once, run an attack grid, report PSNR/NC as CSV");
  eval_app->add_option("--cover", eval_cmd.cover, "Cover image (PGM)")->required();
  eval_app->add_option("--wm", eval_cmd.wm, "Binary logo (PBM or PGM)")->required();
  eval_app->add_option("--alpha", eval_cmd.alpha, "Embedding strength")->capture_default_str();
  eval_app->add_option("--attacks", eval_cmd.attacks,
                       "Semicolon-separated attack specs, 'default' for the standard grid, '' for none")
      ->capture_default_str();
  eval_app->add_option("--jpeg-sweep", eval_cmd.jpeg_sweep, "Extra JPEG rows for these qualities, e.g. 90,70,50")
      ->delimiter(',')
      ->check(kNonEmptyItem);
  eval_app->add_option("--seed", eval_cmd.seed, "Seed for stochastic attacks (default $WMARK_SEED or 0)");
  eval_app->add_option("--report", eval_cmd.report, "CSV output path, '-' for stdout")->capture_default_str();
  eval_app->add_option("--watermarked-out", eval_cmd.watermarked_out, "Also write the watermarked image");
  eval_app->add_flag("--no-timing", eval_cmd.no_timing, "Write 0 in the ms column (byte-stable reports)");
  add_peak_option(eval_app, eval_cmd.peak);
  add_band_options(eval_app, eval_cmd.band);

  SweepCmd sweep_cmd;
  auto* sweep_app = app.add_subcommand("sweep-alpha", "PSNR and no-attack NC for several alphas");
  sweep_app->add_option("--cover", sweep_cmd.cover, "Cover image (PGM)")->required();
  sweep_app->add_option("--wm", sweep_cmd.wm, "Binary logo (PBM or PGM)")->required();
  sweep_app->add_option("--alphas", sweep_cmd.alphas, "Comma-separated alphas, e.g. 10,15,20,30,40")
      ->required()
      ->delimiter(',')
      ->check(kNonEmptyItem);
  sweep_app->add_option("--report", sweep_cmd.report, "CSV output path, '-' for stdout")->capture_default_str();
  add_peak_option(sweep_app, sweep_cmd.peak);
  add_band_options(sweep_app, sweep_cmd.band);

  SynthCmd synth_cmd;
  auto* synth_app = app.add_subcommand("synth", "Write the built-in synthetic cover and logo");
  synth_app->add_option("--out-cover", synth_cmd.cover_out, "Cover output (PGM)")->required();
  synth_app->add_option("--out-logo", synth_cmd.logo_out, "Logo output (PBM or PGM)")->required();
  synth_app->add_option("--size", synth_cmd.size, "Cover side length")->capture_default_str();
  synth_app->add_option("--seed", synth_cmd.seed, "Scene seed")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (embed_app->parsed()) return do_embed(embed_cmd, out);
    if (extract_app->parsed()) return do_extract(extract_cmd, out, err);
    if (attack_app->parsed()) return do_attack(attack_cmd, out);
    if (eval_app->parsed()) return do_evaluate(eval_cmd, out, err);
    if (sweep_app->parsed()) return do_sweep(sweep_cmd, out);
    if (synth_app->parsed()) return do_synth(synth_cmd, out);
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kMathDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace wmark::cli
