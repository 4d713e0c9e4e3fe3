#include "bqsim/norms.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

namespace bqsim {

namespace {

constexpr double kBoundaryTailLimit = 1e-10;

const Field& ensure_physical(const Field& f, Field& storage) {
  if (f.is_physical()) return f;
  storage = to_physical(f);
  return storage;
}

const Field& ensure_spectral(const Field& f, Field& storage) {
  if (f.is_spectral()) return f;
  storage = to_spectral(f);
  return storage;
}

void check_boundary_tail(const Field& f, const char* op, bool strict) {
  const double ratio = boundary_tail_ratio(f);
  if (ratio > kBoundaryTailLimit) {
    if (strict)
      throw std::runtime_error(std::string(op) +
                               ": field not compactly supported inside the box "
                               "(boundary tail ratio " +
                               std::to_string(ratio) + ")");
    std::cerr << "warning: " << op << ": boundary tail ratio " << ratio
              << " exceeds " << kBoundaryTailLimit << "\n";
  }
}

}  // namespace

double sobolev_norm(const Field& f, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev_norm: s must be >= 0");
  Field storage = Field::zeros(f.grid(), Representation::spectral);
  const Field& g = ensure_spectral(f, storage);
  const auto coeffs = g.spectral();
  double sum = 0.0;
  if (s == 0.0) {
    for (const auto& c : coeffs) sum += std::norm(c);
  } else {
    const double* base = reinterpret_cast<const double*>(coeffs.data());
    const double two_s = 2.0 * s;
    for_each_mode(g.grid(), [&](std::size_t flat, double r, bool) {
      const double re = base[2 * flat];
      const double im = base[2 * flat + 1];
      double w;
      if (two_s == 2.0)
        w = r * r;
      else if (two_s == 4.0)
        w = (r * r) * (r * r);
      else
        w = std::pow(r, two_s);
      sum += w * (re * re + im * im);
    });
  }
  const int dim = g.grid().dim();
  const double measure =
      g.grid().freq_cell_volume() / std::pow(2.0 * std::numbers::pi, dim);
  return std::sqrt(sum * measure);
}

double lebesgue_norm(const Field& f, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("lebesgue_norm: q must be >= 1");
  Field storage = Field::zeros(f.grid(), Representation::physical);
  const Field& g = ensure_physical(f, storage);
  const auto values = g.physical();
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  if (q == 2.0) {
    for (double v : values) sum += v * v;
  } else if (q == 1.0) {
    for (double v : values) sum += std::abs(v);
  } else {
    for (double v : values) sum += std::pow(std::abs(v), q);
  }
  return std::pow(sum * g.grid().cell_volume(), 1.0 / q);
}

double boundary_tail_ratio(const Field& f) {
  Field storage = Field::zeros(f.grid(), Representation::physical);
  const Field& g = ensure_physical(f, storage);
  const auto values = g.physical();
  const GridSpec& grid = g.grid();
  const int n = grid.points_per_axis();

  double global_max = 0.0;
  for (double v : values) global_max = std::max(global_max, std::abs(v));
  if (global_max == 0.0) return 0.0;

  double boundary_max = 0.0;
  const std::size_t total = grid.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto m = grid.unflatten(flat);
    bool on_boundary = false;
    for (int d = 0; d < grid.dim(); ++d)
      if (m[d] == 0 || m[d] == n - 1) on_boundary = true;
    if (on_boundary) boundary_max = std::max(boundary_max, std::abs(values[flat]));
  }
  return boundary_max / global_max;
}

double moment_P(const Field& f, bool strict) {
  Field storage = Field::zeros(f.grid(), Representation::physical);
  const Field& g = ensure_physical(f, storage);
  check_boundary_tail(g, "moment_P", strict);
  double sum = 0.0;
  for (double v : g.physical()) sum += v;
  return sum * g.grid().cell_volume();
}

std::array<double, 3> moment_M(const Field& f, bool strict) {
  Field storage = Field::zeros(f.grid(), Representation::physical);
  const Field& g = ensure_physical(f, storage);
  check_boundary_tail(g, "moment_M", strict);
  const GridSpec& grid = g.grid();
  const auto values = g.physical();
  std::array<double, 3> sum{0.0, 0.0, 0.0};
  const std::size_t total = grid.size();
  for (std::size_t flat = 0; flat < total; ++flat) {
    const auto m = grid.unflatten(flat);
    const double v = values[flat];
    for (int d = 0; d < grid.dim(); ++d) sum[d] += grid.coord(m[d]) * v;
  }
  const double vol = grid.cell_volume();
  for (double& s : sum) s *= vol;
  return sum;
}

}  // namespace bqsim
