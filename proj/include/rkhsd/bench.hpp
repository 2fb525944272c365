#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "rkhsd/engine.hpp"
#include "rkhsd/image.hpp"
#include "rkhsd/noise.hpp"

namespace rkhsd {

enum class BenchSuite { Gaussian, Impulse, Mixed };

/// Parses "gaussian", "impulse" or "mixed"; throws std::invalid_argument otherwise.
BenchSuite parse_suite(const std::string& name);

struct BenchRow {
  std::string image_name;
  std::string noise;
  double noisy_psnr = 0.0;
  double denoised_psnr = 0.0;
  double runtime_seconds = 0.0;
  std::string config_digest;
};

struct BenchOptions {
  std::vector<double> s_grid{10.0, 20.0, 30.0};
  std::vector<double> p_grid{0.2, 0.3, 0.4, 0.5};
  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool denoise = true;  // false leaves denoised_psnr NaN and skips the solver
};

/// The noise grid for a suite: every s (gaussian), every p (impulse), or
/// every (s, p) pair, s-major (mixed).
std::vector<NoiseSpec> bench_grid(BenchSuite suite, const BenchOptions& options);

/// Corrupts `clean` with each grid entry, denoises, and scores both images.
std::vector<BenchRow> run_bench(const Image& clean, const std::string& image_name,
                                BenchSuite suite, const EngineConfig& cfg,
                                const BenchOptions& options = {});

/// Header `image,noise,noisy_psnr,denoised_psnr,runtime_s,config_digest`,
/// PSNR with two decimals (capped at 99.00), runtime with three.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace rkhsd
