#include "cli.hpp"

#include <fstream>
#include <mutex>
#include <optional>

#include <CLI11.hpp>

#include "rkhsd/bench.hpp"
#include "rkhsd/config.hpp"
#include "rkhsd/engine.hpp"
#include "rkhsd/metrics.hpp"
#include "rkhsd/noise.hpp"
#include "rkhsd/pgm.hpp"

namespace rkhsd::cli {
namespace {

// Bad command-line input that CLI11 cannot see (e.g. a --set key).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

EngineConfig resolve_config(const std::string& config_path,
                            const std::vector<std::string>& overrides) {
  EngineConfig cfg;
  if (!config_path.empty()) cfg = load_config_file(config_path);
  for (const auto& o : overrides) {
    try {
      apply_override(cfg, o);
    } catch (const ConfigError& e) {
      throw UsageError(std::string("--set: ") + e.what());
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

PgmFormat parse_format(const std::string& name) {
  return name == "p2" ? PgmFormat::P2 : PgmFormat::P5;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge-preserving kernel denoiser for 8-bit grayscale PGM images"};
  app.name("rkhsd");
  app.require_subcommand(1);

  // denoise
  std::string in_path;
  std::string out_path;
  std::string config_path;
  std::vector<std::string> overrides;
  unsigned threads = 0;
  std::string format = "p5";
  bool progress = false;
  auto* denoise = app.add_subcommand("denoise", "Denoise an image");
  denoise->add_option("-i,--input", in_path, "Noisy input PGM")->required();
  denoise->add_option("-o,--output", out_path, "Output PGM")->required();
  denoise->add_option("--config", config_path, "Config file of key = value lines");
  denoise->add_option("--set", overrides, "Override a config key (key=value)");
  denoise->add_option("--threads", threads, "Worker threads (0 = all cores)");
  denoise->add_option("--format", format, "Output encoding")->check(CLI::IsMember({"p5", "p2"}));
  denoise->add_flag("--progress", progress, "Report progress on stderr");

  // addnoise
  std::string kind;
  double s = 0.0;
  double p = 0.0;
  std::uint64_t seed = 0;
  auto* addnoise = app.add_subcommand("addnoise", "Corrupt an image with seeded noise");
  addnoise->add_option("-i,--input", in_path, "Clean input PGM")->required();
  addnoise->add_option("-o,--output", out_path, "Output PGM")->required();
  addnoise->add_option("--kind", kind, "Noise model")
      ->required()
      ->check(CLI::IsMember({"gaussian", "impulse", "mixed"}));
  addnoise->add_option("--s", s, "Gaussian standard deviation (intensity units)");
  addnoise->add_option("--p", p, "Impulse fraction in [0, 1]");
  addnoise->add_option("--seed", seed, "PRNG seed")->required();
  addnoise->add_option("--format", format, "Output encoding")->check(CLI::IsMember({"p5", "p2"}));

  // psnr
  std::string a_path;
  std::string b_path;
  auto* psnr_cmd = app.add_subcommand("psnr", "PSNR between two images in dB");
  psnr_cmd->add_option("-a", a_path, "First image")->required();
  psnr_cmd->add_option("-b", b_path, "Second image")->required();

  // bench
  std::string suite;
  std::string csv_path;
  std::string image_name;
  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Run the noise grid and write a CSV of PSNR results");
  bench->add_option("-i,--input", in_path, "Clean input PGM")->required();
  bench->add_option("--suite", suite, "Noise grid")
      ->required()
      ->check(CLI::IsMember({"gaussian", "impulse", "mixed"}));
  bench->add_option("--out", csv_path, "Output CSV")->required();
  bench->add_option("--config", config_path, "Config file of key = value lines");
  bench->add_option("--set", overrides, "Override a config key (key=value)");
  bench->add_option("--threads", bench_opts.threads, "Worker threads (0 = all cores)");
  bench->add_option("--seed", bench_opts.seed, "PRNG seed (default 1)");
  bench->add_option("--s-grid", bench_opts.s_grid, "Gaussian std values")->delimiter(',');
  bench->add_option("--p-grid", bench_opts.p_grid, "Impulse fractions")->delimiter(',');
  bench->add_option("--name", image_name, "Image label in the CSV (default: file stem)");
  bench->add_flag("--no-denoise", "Only corrupt and score the noisy images");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*denoise) {
      const EngineConfig cfg = resolve_config(config_path, overrides);
      const Image noisy = read_pgm_file(in_path);
      DenoiseOptions opts{threads, {}};
      std::mutex progress_mutex;
      if (progress) {
        opts.progress = [&](std::size_t done, std::size_t total) {
          const std::lock_guard lock(progress_mutex);
          err << "\r" << done << "/" << total << std::flush;
        };
      }
      const Image restored = denoise_image(noisy, cfg, opts);
      if (progress) err << '\n';
      write_pgm_file(out_path, restored, parse_format(format));
    } else if (*addnoise) {
      NoiseSpec spec;
      spec.seed = seed;
      if (kind == "gaussian") spec.kind = GaussianNoise{s};
      else if (kind == "impulse") spec.kind = ImpulseNoise{p};
      else spec.kind = MixedNoise{s, p};
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_pgm_file(out_path, apply_noise(read_pgm_file(in_path), spec), parse_format(format));
    } else if (*psnr_cmd) {
      const Image a = read_pgm_file(a_path);
      const Image b = read_pgm_file(b_path);
      if (a.width() != b.width() || a.height() != b.height()) {
        throw UsageError("images have different dimensions");
      }
      out << format_psnr(psnr(a, b)) << '\n';
    } else if (*bench) {
      const EngineConfig cfg = resolve_config(config_path, overrides);
      bench_opts.denoise = bench->count("--no-denoise") == 0;
      const Image clean = read_pgm_file(in_path);
      if (image_name.empty()) image_name = std::filesystem::path(in_path).stem().string();
      const auto rows = run_bench(clean, image_name, parse_suite(suite), cfg, bench_opts);
      std::ofstream csv(csv_path, std::ios::trunc);
      if (!csv) throw std::runtime_error("cannot open " + csv_path + " for writing");
      write_bench_csv(csv, rows);
      if (!csv) throw std::runtime_error("error writing " + csv_path);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace rkhsd::cli
