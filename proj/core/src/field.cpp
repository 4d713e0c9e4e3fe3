#include "bqsim/field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace bqsim {

namespace {

// Cached FFTW plans, keyed by (dim, n, sign). Plans are created with
// FFTW_ESTIMATE | FFTW_UNALIGNED so they can execute on any buffer via
// fftw_execute_dft; creation is serialized, execution is thread-safe.
struct PlanCache {
  std::mutex mutex;
  struct Entry {
    int dim;
    int n;
    int sign;
    fftw_plan plan;
  };
  std::vector<Entry> entries;

  fftw_plan get(int dim, int n, int sign) {
    std::scoped_lock lock(mutex);
    for (const auto& e : entries)
      if (e.dim == dim && e.n == n && e.sign == sign) return e.plan;
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
    std::vector<fftw_complex> in(total), out(total);
    int dims[3] = {n, n, n};
    fftw_plan plan = fftw_plan_dft(dim, dims, in.data(), out.data(), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!plan) throw std::runtime_error("Field: fftw plan creation failed");
    entries.push_back({dim, n, sign, plan});
    return plan;
  }
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

// data[flat] *= s * (-1)^{m_1 + ... + m_dim}. The alternating sign is the
// phase exp(-i xi_k . x_0) that moves the DFT origin to x_0 = -L.
void apply_parity_scale(const GridSpec& grid, std::complex<double>* data, double s) {
  const int n = grid.points_per_axis();
  if (grid.dim() == 1) {
    double sign = s;
    for (int m0 = 0; m0 < n; ++m0) {
      data[m0] *= sign;
      sign = -sign;
    }
  } else if (grid.dim() == 2) {
    std::size_t flat = 0;
    double row = s;
    for (int m0 = 0; m0 < n; ++m0) {
      double sign = row;
      for (int m1 = 0; m1 < n; ++m1, ++flat) {
        data[flat] *= sign;
        sign = -sign;
      }
      row = -row;
    }
  } else {
    std::size_t flat = 0;
    double plane = s;
    for (int m0 = 0; m0 < n; ++m0) {
      double row = plane;
      for (int m1 = 0; m1 < n; ++m1) {
        double sign = row;
        for (int m2 = 0; m2 < n; ++m2, ++flat) {
          data[flat] *= sign;
          sign = -sign;
        }
        row = -row;
      }
      plane = -plane;
    }
  }
}

}  // namespace

Field::Field(const GridSpec& grid, Representation rep) : grid_(grid), rep_(rep) {}

Field Field::zeros(const GridSpec& grid, Representation rep) {
  Field f(grid, rep);
  if (rep == Representation::physical)
    f.phys_.assign(grid.size(), 0.0);
  else
    f.spec_.assign(grid.size(), std::complex<double>{});
  return f;
}

Field Field::from_physical(const GridSpec& grid, std::vector<double> values) {
  if (values.size() != grid.size())
    throw std::invalid_argument("Field: physical size mismatch");
  Field f(grid, Representation::physical);
  f.phys_ = std::move(values);
  return f;
}

Field Field::from_spectral(const GridSpec& grid,
                           std::vector<std::complex<double>> values) {
  if (values.size() != grid.size())
    throw std::invalid_argument("Field: spectral size mismatch");
  Field f(grid, Representation::spectral);
  f.spec_ = std::move(values);
  return f;
}

std::span<const double> Field::physical() const& {
  if (rep_ != Representation::physical)
    throw std::logic_error("Field: not in physical representation");
  return phys_;
}

std::span<const std::complex<double>> Field::spectral() const& {
  if (rep_ != Representation::spectral)
    throw std::logic_error("Field: not in spectral representation");
  return spec_;
}

std::vector<double>& Field::physical_data() & {
  if (rep_ != Representation::physical)
    throw std::logic_error("Field: not in physical representation");
  return phys_;
}

std::vector<std::complex<double>>& Field::spectral_data() & {
  if (rep_ != Representation::spectral)
    throw std::logic_error("Field: not in spectral representation");
  return spec_;
}

Field to_spectral(const Field& f) {
  if (!f.is_physical())
    throw std::logic_error("to_spectral: input must be physical");
  const GridSpec& grid = f.grid();
  const std::size_t total = grid.size();
  const auto values = f.physical();

  std::vector<std::complex<double>> in(total), out(total);
  for (std::size_t i = 0; i < total; ++i) in[i] = values[i];

  fftw_plan plan = plan_cache().get(grid.dim(), grid.points_per_axis(), FFTW_FORWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));

  apply_parity_scale(grid, out.data(), grid.cell_volume());
  return Field::from_spectral(grid, std::move(out));
}

Field to_physical(const Field& f, double imag_tol) {
  if (!f.is_spectral())
    throw std::logic_error("to_physical: input must be spectral");
  const GridSpec& grid = f.grid();
  const std::size_t total = grid.size();
  const auto coeffs = f.spectral();

  std::vector<std::complex<double>> in(coeffs.begin(), coeffs.end()), out(total);
  apply_parity_scale(grid, in.data(), 1.0 / grid.cell_volume());

  fftw_plan plan = plan_cache().get(grid.dim(), grid.points_per_axis(), FFTW_BACKWARD);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));

  const double norm = 1.0 / static_cast<double>(total);
  double max_re = 0.0, max_im = 0.0;
  std::vector<double> values(total);
  for (std::size_t i = 0; i < total; ++i) {
    const double re = out[i].real() * norm;
    const double im = out[i].imag() * norm;
    values[i] = re;
    max_re = std::max(max_re, std::abs(re));
    max_im = std::max(max_im, std::abs(im));
  }
  // Imaginary residue is discarded only after this check.
  if (max_im > imag_tol * std::max(max_re, max_im))
    throw std::runtime_error(
        "to_physical: imaginary residue above tolerance (conjugate symmetry broken)");
  return Field::from_physical(grid, std::move(values));
}

Field grid_delta(const GridSpec& grid, const std::array<double, 3>& center) {
  Field f = Field::zeros(grid, Representation::physical);
  std::array<int, 3> j{0, 0, 0};
  for (int d = 0; d < grid.dim(); ++d) {
    const double pos = (center[d] + grid.half_length()) / grid.dx();
    int idx = static_cast<int>(std::lround(pos));
    idx = std::clamp(idx, 0, grid.points_per_axis() - 1);
    j[d] = idx;
  }
  f.physical_data()[grid.flatten(j)] = 1.0 / grid.cell_volume();
  return f;
}

}  // namespace bqsim
