#include "bqsim/grid.hpp"

#include <numbers>
#include <stdexcept>

namespace bqsim {

GridSpec::GridSpec(int dim, int points_per_axis, double half_length)
    : dim_(dim), n_(points_per_axis), half_length_(half_length) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("GridSpec: dim must be 1, 2 or 3");
  if (points_per_axis <= 0 || points_per_axis % 2 != 0)
    throw std::invalid_argument("GridSpec: points_per_axis must be even and positive");
  if (!(half_length > 0.0))
    throw std::invalid_argument("GridSpec: half_length must be positive");
  size_ = 1;
  for (int d = 0; d < dim_; ++d) size_ *= static_cast<std::size_t>(n_);
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= dx();
  return v;
}

double GridSpec::freq_spacing() const { return std::numbers::pi / half_length_; }

double GridSpec::freq_cell_volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= freq_spacing();
  return v;
}

std::array<int, 3> GridSpec::unflatten(std::size_t flat) const {
  std::array<int, 3> m{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d) {
    m[d] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return m;
}

std::size_t GridSpec::flatten(const std::array<int, 3>& m) const {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d)
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(m[d]);
  return flat;
}

double GridSpec::freq_radius(std::size_t flat) const {
  const auto m = unflatten(flat);
  double s = 0.0;
  for (int d = 0; d < dim_; ++d) {
    const double xi = freq(m[d]);
    s += xi * xi;
  }
  return std::sqrt(s);
}

bool GridSpec::touches_nyquist(std::size_t flat) const {
  const auto m = unflatten(flat);
  for (int d = 0; d < dim_; ++d)
    if (is_nyquist_index(m[d])) return true;
  return false;
}

}  // namespace bqsim
