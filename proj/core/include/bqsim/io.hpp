#pragma once

#include <span>
#include <string>
#include <vector>

#include "bqsim/field.hpp"
#include "bqsim/series.hpp"

namespace bqsim {

/// Binary field snapshot. 32-byte header: magic "BQSF", version u16, dim u16,
/// N u32, L float64, all little-endian, zero-padded to 32 bytes; followed by
/// row-major float64 physical values.
void write_snapshot(const std::string& path, const Field& physical_field);
Field read_snapshot(const std::string& path);

/// CSV norm series with columns t,label,value. One file may carry several
/// series distinguished by label.
void write_series_csv(const std::string& path, std::span<const NormSeries> series);
std::vector<NormSeries> read_series_csv(const std::string& path);

/// Formats a double with enough digits to round-trip exactly (%.17g).
std::string format_double(double v);

}  // namespace bqsim
