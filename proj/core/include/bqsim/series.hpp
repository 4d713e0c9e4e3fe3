#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bqsim {

/// Time-stamped norm values: strictly increasing positive times, non-negative
/// values, and a norm descriptor label such as "L2", "Hdot:s=1", "L6", "Linf".
struct NormSeries {
  std::vector<double> times;
  std::vector<double> values;
  std::string label;

  void push(double t, double v) {
    if (!(t > 0.0)) throw std::invalid_argument("NormSeries: times must be positive");
    if (!times.empty() && !(t > times.back()))
      throw std::invalid_argument("NormSeries: times must be strictly increasing");
    if (!(v >= 0.0)) throw std::invalid_argument("NormSeries: values must be non-negative");
    times.push_back(t);
    values.push_back(v);
  }

  std::size_t size() const { return times.size(); }
};

}  // namespace bqsim
