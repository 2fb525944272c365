#include "rkhsd/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "rkhsd/config.hpp"
#include "rkhsd/metrics.hpp"

namespace rkhsd {

BenchSuite parse_suite(const std::string& name) {
  if (name == "gaussian") return BenchSuite::Gaussian;
  if (name == "impulse") return BenchSuite::Impulse;
  if (name == "mixed") return BenchSuite::Mixed;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<NoiseSpec> bench_grid(BenchSuite suite, const BenchOptions& options) {
  std::vector<NoiseSpec> grid;
  switch (suite) {
    case BenchSuite::Gaussian:
      for (double s : options.s_grid) grid.push_back({GaussianNoise{s}, options.seed});
      break;
    case BenchSuite::Impulse:
      for (double p : options.p_grid) grid.push_back({ImpulseNoise{p}, options.seed});
      break;
    case BenchSuite::Mixed:
      for (double s : options.s_grid) {
        for (double p : options.p_grid) grid.push_back({MixedNoise{s, p}, options.seed});
      }
      break;
  }
  return grid;
}

std::vector<BenchRow> run_bench(const Image& clean, const std::string& image_name,
                                BenchSuite suite, const EngineConfig& cfg,
                                const BenchOptions& options) {
  cfg.validate();
  const std::string digest = config_digest(cfg);
  std::vector<BenchRow> rows;
  for (const NoiseSpec& spec : bench_grid(suite, options)) {
    const Image noisy = apply_noise(clean, spec);
    BenchRow row{image_name, spec.describe(), psnr(noisy, clean),
                 std::numeric_limits<double>::quiet_NaN(), 0.0, digest};
    if (options.denoise) {
      const auto start = std::chrono::steady_clock::now();
      const Image restored = denoise_image(noisy, cfg, {options.threads, {}});
      row.runtime_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      row.denoised_psnr = psnr(restored, clean);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "image,noise,noisy_psnr,denoised_psnr,runtime_s,config_digest\n";
  for (const auto& row : rows) {
    char runtime[32];
    std::snprintf(runtime, sizeof runtime, "%.3f", row.runtime_seconds);
    out << row.image_name << ',' << row.noise << ',' << format_psnr(row.noisy_psnr) << ','
        << (std::isnan(row.denoised_psnr) ? std::string("nan") : format_psnr(row.denoised_psnr))
        << ',' << runtime << ',' << row.config_digest << '\n';
  }
}

}  // namespace rkhsd
