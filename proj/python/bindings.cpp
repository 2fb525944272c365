#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>

#include "rkhsd/config.hpp"
#include "rkhsd/engine.hpp"
#include "rkhsd/metrics.hpp"
#include "rkhsd/noise.hpp"
#include "rkhsd/pgm.hpp"

namespace py = pybind11;
using namespace rkhsd;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Image to_image(const Array& a) {
  if (a.ndim() != 2) throw py::value_error("expected a 2-D array (height, width)");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  return Image(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const Image& img) {
  Array out({img.height(), img.width()});
  std::memcpy(out.mutable_data(), img.pixels().data(), img.size() * sizeof(double));
  return out;
}

Array to_array(const Eigen::MatrixXd& m) {
  Array out({m.rows(), m.cols()});
  auto v = out.mutable_unchecked<2>();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r, c) = m(r, c);
  }
  return out;
}

PgmFormat parse_format(const std::string& f) {
  if (f == "p5" || f == "P5") return PgmFormat::P5;
  if (f == "p2" || f == "P2") return PgmFormat::P2;
  throw py::value_error("format must be 'p5' or 'p2'");
}

RegionClass parse_region(const std::string& r) {
  if (r == "smooth") return RegionClass::Smooth;
  if (r == "edge") return RegionClass::Edge;
  throw py::value_error("region must be 'smooth' or 'edge'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "RKHS edge-preserving image denoising";

  py::register_exception<PgmParseError>(m, "PgmParseError", PyExc_ValueError);
  py::register_exception<PgmUnsupportedError>(m, "PgmUnsupportedError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("erf", &rkhsd::erf, py::arg("x"));
  m.def(
      "gaussian_kernel",
      [](std::pair<double, double> p, std::pair<double, double> q, double sigma) {
        return gaussian_kernel({p.first, p.second}, {q.first, q.second}, KernelParams(sigma));
      },
      py::arg("p"), py::arg("q"), py::arg("sigma"));
  m.def(
      "gram_matrix",
      [](int n, double sigma) {
        const auto grid = patch_grid(n);
        return to_array(build_gram(grid, KernelParams(sigma)).entries());
      },
      py::arg("n"), py::arg("sigma"), "Gram matrix over the n x n patch grid.");

  py::class_<EngineConfig>(m, "EngineConfig")
      .def(py::init<>())
      .def(py::init([](py::kwargs kw) {
        EngineConfig cfg;
        for (const auto& [k, v] : kw) {
          std::string key = py::str(k);
          if (key == "lambda_") key = "lambda";
          set_config_value(cfg, key, v.is_none() ? std::string("auto") : std::string(py::str(v)));
        }
        return cfg;
      }))
      .def_readwrite("patch_n", &EngineConfig::patch_n)
      .def_readwrite("sigma", &EngineConfig::sigma)
      .def_readwrite("lambda_", &EngineConfig::lambda)
      .def_readwrite("mu_smooth", &EngineConfig::mu_smooth)
      .def_readwrite("mu_edge", &EngineConfig::mu_edge)
      .def_readwrite("mu1_smooth", &EngineConfig::mu1_smooth)
      .def_readwrite("mu1_edge", &EngineConfig::mu1_edge)
      .def_readwrite("edge_threshold", &EngineConfig::edge_threshold)
      .def_readwrite("basis_levels", &EngineConfig::basis_levels)
      .def_readwrite("basis_sharpness", &EngineConfig::basis_sharpness)
      .def_readwrite("max_iters", &EngineConfig::max_iters)
      .def_readwrite("step_c", &EngineConfig::step_c)
      .def_readwrite("radius", &EngineConfig::radius)
      .def_readwrite("tol", &EngineConfig::tol)
      .def("validate", &EngineConfig::validate)
      .def("set", [](EngineConfig& c, const std::string& key, const std::string& value) {
        set_config_value(c, key, value);
      })
      .def("to_text", &config_to_text)
      .def("digest", &config_digest)
      .def_static("from_text", [](const std::string& text) {
        EngineConfig cfg;
        parse_config(cfg, text);
        return cfg;
      })
      .def("__repr__", [](const EngineConfig& c) { return "EngineConfig(digest=" + config_digest(c) + ")"; });

  m.def(
      "denoise",
      [](const Array& image, const EngineConfig& cfg, unsigned threads) {
        const Image in = to_image(image);
        Image out;
        {
          py::gil_scoped_release release;
          out = denoise_image(in, cfg, {threads, {}});
        }
        return to_array(out);
      },
      py::arg("image"), py::arg("config") = EngineConfig{}, py::arg("threads") = 0u);

  m.def(
      "solve_patch",
      [](const Array& patch, const EngineConfig& cfg, const std::string& region) {
        if (patch.ndim() != 2 || patch.shape(0) != patch.shape(1)) {
          throw py::value_error("patch must be a square 2-D array");
        }
        EngineConfig local = cfg;
        local.patch_n = static_cast<int>(patch.shape(0));
        const EngineGeometry geom(local);
        const PatchSamples samples{local.patch_n, std::vector<double>(patch.data(), patch.data() + patch.size())};
        const SolveResult r =
            solve_patch(samples, geom.system(), params_for_region(parse_region(region), local));
        const Eigen::VectorXd& c = r.model.coeffs();
        py::dict out;
        py::array_t<double> coeffs(py::array::ShapeContainer{c.size()});
        std::memcpy(coeffs.mutable_data(), c.data(), static_cast<std::size_t>(c.size()) * sizeof(double));
        out["coeffs"] = coeffs;
        out["objective"] = r.objective;
        out["iterations"] = r.iterations;
        out["center"] = model_eval(r.model, 0.5, 0.5);
        return out;
      },
      py::arg("patch"), py::arg("config") = EngineConfig{}, py::arg("region") = "smooth",
      "Fits one patch; the patch size overrides config.patch_n.");

  m.def(
      "design_matrix",
      [](const EngineConfig& cfg) { return to_array(EngineGeometry(cfg).system().design); },
      py::arg("config") = EngineConfig{});

  m.def("add_gaussian_noise",
        [](const Array& img, double s, std::uint64_t seed) {
          return to_array(add_gaussian_noise(to_image(img), s, seed));
        },
        py::arg("image"), py::arg("s"), py::arg("seed"));
  m.def("add_impulse_noise",
        [](const Array& img, double p, std::uint64_t seed) {
          return to_array(add_impulse_noise(to_image(img), p, seed));
        },
        py::arg("image"), py::arg("p"), py::arg("seed"));
  m.def("add_mixed_noise",
        [](const Array& img, double s, double p, std::uint64_t seed) {
          return to_array(add_mixed_noise(to_image(img), s, p, seed));
        },
        py::arg("image"), py::arg("s"), py::arg("p"), py::arg("seed"));

  m.def("mse", [](const Array& a, const Array& b) { return mse(to_image(a), to_image(b)); });
  m.def("psnr", [](const Array& a, const Array& b) { return psnr(to_image(a), to_image(b)); });

  m.def("read_pgm", [](const std::string& path) { return to_array(read_pgm_file(path)); }, py::arg("path"));
  m.def(
      "write_pgm",
      [](const std::string& path, const Array& img, const std::string& format) {
        write_pgm_file(path, to_image(img), parse_format(format));
      },
      py::arg("path"), py::arg("image"), py::arg("format") = "p5");
  m.def("decode_pgm", [](const py::bytes& b) { return to_array(read_pgm(std::string(b))); }, py::arg("data"));
  m.def(
      "encode_pgm",
      [](const Array& img, const std::string& format) {
        return py::bytes(write_pgm(to_image(img), parse_format(format)));
      },
      py::arg("image"), py::arg("format") = "p5");
}
