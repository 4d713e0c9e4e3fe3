#pragma once

#include <complex>
#include <span>
#include <vector>

#include "bqsim/grid.hpp"

namespace bqsim {

enum class Representation { physical, spectral };

/// A real scalar function on a GridSpec, stored either as physical samples
/// (real) or as spectral coefficients (complex).
///
/// The spectral convention approximates the continuous transform:
///   fhat(xi_k) = dx^dim * sum_j f(x_j) exp(-i xi_k . x_j),
/// so that fhat(0) equals the integral of f over the box and multiplier
/// symbols can be applied without per-call rescaling.
class Field {
 public:
  static Field zeros(const GridSpec& grid, Representation rep);
  static Field from_physical(const GridSpec& grid, std::vector<double> values);
  static Field from_spectral(const GridSpec& grid,
                             std::vector<std::complex<double>> values);

  const GridSpec& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::physical; }
  bool is_spectral() const { return rep_ == Representation::spectral; }

  // Views into the sample storage. Lvalue-qualified: a span into a temporary
  // Field would dangle, so name the Field first.
  std::span<const double> physical() const&;
  std::span<const std::complex<double>> spectral() const&;
  std::span<const double> physical() && = delete;
  std::span<const std::complex<double>> spectral() && = delete;
  std::vector<double>& physical_data() &;
  std::vector<std::complex<double>>& spectral_data() &;

 private:
  Field(const GridSpec& grid, Representation rep);

  GridSpec grid_;
  Representation rep_;
  std::vector<double> phys_;
  std::vector<std::complex<double>> spec_;
};

/// Forward transform (physical -> spectral) under the convention above.
Field to_spectral(const Field& f);

/// Inverse transform (spectral -> physical). The imaginary residue is checked
/// against `imag_tol` (relative to the field magnitude) before being
/// discarded; a residue above tolerance signals corrupted conjugate symmetry.
Field to_physical(const Field& f, double imag_tol = 1e-12);

/// Grid approximation of a Dirac mass at the grid point closest to `center`:
/// value 1/dx^dim there, zero elsewhere, so that the spectrum is exp(-i xi.c).
Field grid_delta(const GridSpec& grid, const std::array<double, 3>& center = {});

/// Evaluates a separable pointwise function f(x) on the grid.
template <typename F>
Field make_physical(const GridSpec& grid, F&& f) {
  std::vector<double> vals(grid.size());
  const int n = grid.points_per_axis();
  std::array<double, 3> x{0.0, 0.0, 0.0};
  std::size_t flat = 0;
  switch (grid.dim()) {
    case 1:
      for (int j0 = 0; j0 < n; ++j0) {
        x[0] = grid.coord(j0);
        vals[flat++] = f(x);
      }
      break;
    case 2:
      for (int j0 = 0; j0 < n; ++j0) {
        x[0] = grid.coord(j0);
        for (int j1 = 0; j1 < n; ++j1) {
          x[1] = grid.coord(j1);
          vals[flat++] = f(x);
        }
      }
      break;
    default:
      for (int j0 = 0; j0 < n; ++j0) {
        x[0] = grid.coord(j0);
        for (int j1 = 0; j1 < n; ++j1) {
          x[1] = grid.coord(j1);
          for (int j2 = 0; j2 < n; ++j2) {
            x[2] = grid.coord(j2);
            vals[flat++] = f(x);
          }
        }
      }
      break;
  }
  return Field::from_physical(grid, std::move(vals));
}

}  // namespace bqsim
