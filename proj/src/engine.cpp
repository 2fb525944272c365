#include "rkhsd/engine.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace rkhsd {
namespace {

// Reflect-101 indexing: -1 -> 1, len -> len - 2, periodic beyond that.
int mirror_index(int i, int len) {
  if (len == 1) return 0;
  const int period = 2 * (len - 1);
  i %= period;
  if (i < 0) i += period;
  return i < len ? i : period - i;
}

}  // namespace

void EngineConfig::validate() const {
  if (patch_n < 3 || patch_n % 2 == 0) {
    throw std::invalid_argument("patch_n must be odd and >= 3, got " + std::to_string(patch_n));
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  for (double w : {lambda, mu_smooth, mu_edge, mu1_smooth, mu1_edge}) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("penalty weights must be finite and >= 0");
    }
  }
  if (mu_edge > mu_smooth || mu1_edge > mu1_smooth) {
    throw std::invalid_argument("edge penalties must not exceed smooth penalties");
  }
  if (!(edge_threshold >= 0.0)) throw std::invalid_argument("edge_threshold must be >= 0");
  if (basis_levels < 1) throw std::invalid_argument("basis_levels must be >= 1");
  if (!(basis_sharpness > 0.0)) throw std::invalid_argument("basis_sharpness must be positive");
  params_for_region(RegionClass::Smooth, *this).validate();
}

PatchSamples extract_patch(const Image& img, int row, int col, int n) {
  if (row < 0 || row >= img.height() || col < 0 || col >= img.width()) {
    throw std::invalid_argument("pixel (" + std::to_string(row) + ", " + std::to_string(col) +
                                ") is outside the " + std::to_string(img.width()) + "x" +
                                std::to_string(img.height()) + " image");
  }
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("patch size must be odd and positive");
  const int half = n / 2;
  PatchSamples patch{n, {}};
  patch.values.reserve(static_cast<std::size_t>(n) * n);
  for (int dr = -half; dr <= half; ++dr) {
    const int r = mirror_index(row + dr, img.height());
    for (int dc = -half; dc <= half; ++dc) {
      patch.values.push_back(img.at(r, mirror_index(col + dc, img.width())));
    }
  }
  return patch;
}

double mean_gradient(const PatchSamples& patch) {
  const int n = patch.n;
  if (n < 2) throw std::invalid_argument("mean_gradient needs a patch of size >= 2");
  if (patch.values.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("mean_gradient: sample count does not match patch size");
  }
  if (n == 2) return 0.0;  // no interior samples
  auto v = [&](int r, int c) { return patch.values[static_cast<std::size_t>(r * n + c)]; };
  double sum = 0.0;
  for (int r = 1; r < n - 1; ++r) {
    for (int c = 1; c < n - 1; ++c) {
      const double gx = 0.5 * (v(r, c + 1) - v(r, c - 1));
      const double gy = 0.5 * (v(r + 1, c) - v(r - 1, c));
      sum += std::sqrt(gx * gx + gy * gy);
    }
  }
  return sum / ((n - 2) * (n - 2));
}

RegionClass classify_region(double g, const EngineConfig& cfg) {
  return g >= cfg.edge_threshold ? RegionClass::Edge : RegionClass::Smooth;
}

SolverParams params_for_region(RegionClass cls, const EngineConfig& cfg) {
  SolverParams p;
  p.lambda = cfg.lambda;
  p.mu = cls == RegionClass::Edge ? cfg.mu_edge : cfg.mu_smooth;
  p.mu1 = cls == RegionClass::Edge ? cfg.mu1_edge : cfg.mu1_smooth;
  p.max_iters = cfg.max_iters;
  p.step_c = cfg.step_c;
  p.radius = cfg.radius.value_or(SolverParams::default_radius(cfg.patch_n));
  p.tol = cfg.tol;
  return p;
}

EngineGeometry::EngineGeometry(const EngineConfig& cfg)
    : basis_(default_basis(cfg.basis_levels, cfg.basis_sharpness)),
      system_(cfg.patch_n, KernelParams(cfg.sigma), basis_) {}

PixelResult denoise_pixel_detailed(const Image& img, int row, int col, const EngineConfig& cfg,
                                   const EngineGeometry& geometry) {
  const PatchSamples patch = extract_patch(img, row, col, cfg.patch_n);
  PixelResult out;
  out.mean_gradient = mean_gradient(patch);
  out.region = classify_region(out.mean_gradient, cfg);
  out.params = params_for_region(out.region, cfg);
  const SolveResult fit = solve_patch(patch, geometry.system(), out.params);
  out.value = Image::clamp_intensity(model_eval(fit.model, 0.5, 0.5));
  return out;
}

double denoise_pixel(const Image& img, int row, int col, const EngineConfig& cfg,
                     const EngineGeometry& geometry) {
  return denoise_pixel_detailed(img, row, col, cfg, geometry).value;
}

Image denoise_image(const Image& img, const EngineConfig& cfg, const DenoiseOptions& options,
                    std::vector<PixelResult>* details) {
  cfg.validate();
  const EngineGeometry geometry(cfg);
  const int width = img.width();
  const int height = img.height();
  const std::size_t total = img.size();

  std::vector<double> out(total);
  if (details != nullptr) details->assign(total, PixelResult{});

  // Rows are handed out dynamically; each pixel writes only its own slot.
  std::atomic<int> next_row{0};
  std::atomic<std::size_t> done{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto run_rows = [&] {
    for (int r = next_row++; r < height; r = next_row++) {
      for (int c = 0; c < width; ++c) {
        const std::size_t k = static_cast<std::size_t>(r) * width + c;
        PixelResult px = denoise_pixel_detailed(img, r, c, cfg, geometry);
        out[k] = px.value;
        if (details != nullptr) (*details)[k] = px;
      }
      const std::size_t finished = done += static_cast<std::size_t>(width);
      if (options.progress) options.progress(finished, total);
    }
  };

  auto worker = [&] {
    try {
      run_rows();
    } catch (...) {
      const std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next_row = height;
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(height, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return Image(width, height, std::move(out));
}

}  // namespace rkhsd
