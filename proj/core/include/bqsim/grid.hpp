#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace bqsim {

/// Uniform periodic grid on the box [-L, L)^dim together with its discrete
/// frequency lattice xi_k = (pi/L) k, k = -N/2 .. N/2-1 per axis.
///
/// Storage order is row-major over the per-axis indices m_i in [0, N), where
/// the signed frequency index is k = m for m < N/2 and k = m - N otherwise
/// (the usual FFT layout).
class GridSpec {
 public:
  GridSpec(int dim, int points_per_axis, double half_length);

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  double half_length() const { return half_length_; }

  /// Grid spacing per axis, dx = 2L/N.
  double dx() const { return 2.0 * half_length_ / n_; }
  /// Physical cell volume dx^dim.
  double cell_volume() const;
  /// Frequency spacing per axis, pi/L.
  double freq_spacing() const;
  /// Frequency cell volume (pi/L)^dim.
  double freq_cell_volume() const;

  /// Total number of grid points, N^dim.
  std::size_t size() const { return size_; }

  /// Signed integer frequency index for storage index m in [0, N).
  int freq_index(int m) const { return m < n_ / 2 ? m : m - n_; }
  bool is_nyquist_index(int m) const { return m == n_ / 2; }

  /// Physical coordinate of grid point j along one axis, x_j = -L + j dx.
  double coord(int j) const { return -half_length_ + j * dx(); }
  /// Frequency of storage index m along one axis.
  double freq(int m) const { return freq_spacing() * freq_index(m); }

  /// Per-axis storage indices of a flat row-major index.
  std::array<int, 3> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<int, 3>& m) const;

  /// |xi| at a flat spectral index.
  double freq_radius(std::size_t flat) const;
  /// True if any axis of the flat index sits on the Nyquist index N/2.
  bool touches_nyquist(std::size_t flat) const;

  bool operator==(const GridSpec& other) const {
    return dim_ == other.dim_ && n_ == other.n_ &&
           half_length_ == other.half_length_;
  }

 private:
  int dim_;
  int n_;
  double half_length_;
  std::size_t size_;
};

/// Visits every spectral index of `grid`, calling
/// f(flat, r, nyquist) with r = |xi| and nyquist true when any axis sits on
/// the Nyquist index. The loop nests over axes, so per-axis frequencies are
/// computed only N times each.
template <typename F>
void for_each_mode(const GridSpec& grid, F&& f) {
  const int n = grid.points_per_axis();
  const int ny = n / 2;
  const double dxi = grid.freq_spacing();
  switch (grid.dim()) {
    case 1: {
      for (int m0 = 0; m0 < n; ++m0) {
        const double xi0 = dxi * grid.freq_index(m0);
        f(static_cast<std::size_t>(m0), std::abs(xi0), m0 == ny);
      }
      break;
    }
    case 2: {
      std::size_t flat = 0;
      for (int m0 = 0; m0 < n; ++m0) {
        const double xi0 = dxi * grid.freq_index(m0);
        const double xi0sq = xi0 * xi0;
        const bool ny0 = (m0 == ny);
        for (int m1 = 0; m1 < n; ++m1, ++flat) {
          const double xi1 = dxi * grid.freq_index(m1);
          f(flat, std::sqrt(xi0sq + xi1 * xi1), ny0 || m1 == ny);
        }
      }
      break;
    }
    default: {
      std::size_t flat = 0;
      for (int m0 = 0; m0 < n; ++m0) {
        const double xi0 = dxi * grid.freq_index(m0);
        const double s0 = xi0 * xi0;
        const bool ny0 = (m0 == ny);
        for (int m1 = 0; m1 < n; ++m1) {
          const double xi1 = dxi * grid.freq_index(m1);
          const double s01 = s0 + xi1 * xi1;
          const bool ny01 = ny0 || (m1 == ny);
          for (int m2 = 0; m2 < n; ++m2, ++flat) {
            const double xi2 = dxi * grid.freq_index(m2);
            f(flat, std::sqrt(s01 + xi2 * xi2), ny01 || m2 == ny);
          }
        }
      }
      break;
    }
  }
}

/// Like for_each_mode but also passes the frequency vector xi (padded with
/// zeros beyond `dim`). Used by odd-order multipliers.
template <typename F>
void for_each_mode_vec(const GridSpec& grid, F&& f) {
  const int n = grid.points_per_axis();
  const int ny = n / 2;
  const double dxi = grid.freq_spacing();
  std::array<double, 3> xi{0.0, 0.0, 0.0};
  switch (grid.dim()) {
    case 1: {
      for (int m0 = 0; m0 < n; ++m0) {
        xi[0] = dxi * grid.freq_index(m0);
        f(static_cast<std::size_t>(m0), std::abs(xi[0]), m0 == ny, xi);
      }
      break;
    }
    case 2: {
      std::size_t flat = 0;
      for (int m0 = 0; m0 < n; ++m0) {
        xi[0] = dxi * grid.freq_index(m0);
        const double s0 = xi[0] * xi[0];
        const bool ny0 = (m0 == ny);
        for (int m1 = 0; m1 < n; ++m1, ++flat) {
          xi[1] = dxi * grid.freq_index(m1);
          f(flat, std::sqrt(s0 + xi[1] * xi[1]), ny0 || m1 == ny, xi);
        }
      }
      break;
    }
    default: {
      std::size_t flat = 0;
      for (int m0 = 0; m0 < n; ++m0) {
        xi[0] = dxi * grid.freq_index(m0);
        const double s0 = xi[0] * xi[0];
        const bool ny0 = (m0 == ny);
        for (int m1 = 0; m1 < n; ++m1) {
          xi[1] = dxi * grid.freq_index(m1);
          const double s01 = s0 + xi[1] * xi[1];
          const bool ny01 = ny0 || (m1 == ny);
          for (int m2 = 0; m2 < n; ++m2, ++flat) {
            xi[2] = dxi * grid.freq_index(m2);
            f(flat, std::sqrt(s01 + xi[2] * xi[2]), ny01 || m2 == ny, xi);
          }
        }
      }
      break;
    }
  }
}

}  // namespace bqsim
