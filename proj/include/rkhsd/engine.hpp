#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "rkhsd/image.hpp"
#include "rkhsd/model.hpp"
#include "rkhsd/solver.hpp"

namespace rkhsd {

/// Image-level denoising settings. Edge regions must get the smaller penalties.
struct EngineConfig {
  int patch_n = 5;
  double sigma = 0.35;
  double lambda = 0.5;
  double mu_smooth = 10.0;
  double mu_edge = 0.05;
  double mu1_smooth = 5.0;
  double mu1_edge = 0.05;
  double edge_threshold = 25.0;  // mean gradient, intensity units per pixel
  int basis_levels = 2;
  double basis_sharpness = 15.0;

  // Inner solve. An unset radius means SolverParams::default_radius(patch_n).
  int max_iters = 300;
  double step_c = 25.0;
  std::optional<double> radius;
  double tol = 1e-4;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

enum class RegionClass { Smooth, Edge };

/// n x n window centered at (row, col), mirrored (without edge repeat) at the
/// image border. Works for images smaller than the window.
PatchSamples extract_patch(const Image& img, int row, int col, int n);

/// Mean over interior samples of the central-difference gradient magnitude,
/// in intensity units per pixel. Throws std::invalid_argument when n < 2.
double mean_gradient(const PatchSamples& patch);

/// Edge iff g >= edge_threshold.
RegionClass classify_region(double g, const EngineConfig& cfg);

/// Same lambda for both classes; mu and mu1 follow the class.
SolverParams params_for_region(RegionClass cls, const EngineConfig& cfg);

/// Basis, Gram matrix and design matrix shared by every pixel of an image.
class EngineGeometry {
 public:
  explicit EngineGeometry(const EngineConfig& cfg);

  const EdgeBasis& basis() const { return basis_; }
  const PatchSystem& system() const { return system_; }

 private:
  EdgeBasis basis_;
  PatchSystem system_;
};

struct PixelResult {
  double value = 0.0;
  RegionClass region = RegionClass::Smooth;
  double mean_gradient = 0.0;
  SolverParams params;
};

PixelResult denoise_pixel_detailed(const Image& img, int row, int col, const EngineConfig& cfg,
                                   const EngineGeometry& geometry);

/// Fitted model at the patch center, clamped to [0, 255].
double denoise_pixel(const Image& img, int row, int col, const EngineConfig& cfg,
                     const EngineGeometry& geometry);

/// (pixels_done, pixels_total). May be called concurrently from worker threads.
using ProgressCallback = std::function<void(std::size_t, std::size_t)>;

struct DenoiseOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  ProgressCallback progress;
};

/// Denoises every pixel independently. The output does not depend on the
/// thread count. When `details` is given it receives one entry per pixel.
Image denoise_image(const Image& img, const EngineConfig& cfg, const DenoiseOptions& options = {},
                    std::vector<PixelResult>* details = nullptr);

}  // namespace rkhsd
