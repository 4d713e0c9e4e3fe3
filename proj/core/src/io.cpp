#include "bqsim/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bqsim {

namespace {

constexpr char kMagic[4] = {'B', 'Q', 'S', 'F'};
constexpr std::uint16_t kVersion = 1;
constexpr std::size_t kHeaderSize = 32;

void put_u16(unsigned char* p, std::uint16_t v) {
  p[0] = static_cast<unsigned char>(v & 0xff);
  p[1] = static_cast<unsigned char>(v >> 8);
}
void put_u32(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
}
std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}
std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Field& field) {
  if (!field.is_physical())
    throw std::invalid_argument("write_snapshot: field must be physical");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_snapshot: cannot open " + path);

  unsigned char header[kHeaderSize] = {};
  std::memcpy(header, kMagic, 4);
  put_u16(header + 4, kVersion);
  put_u16(header + 6, static_cast<std::uint16_t>(field.grid().dim()));
  put_u32(header + 8, static_cast<std::uint32_t>(field.grid().points_per_axis()));
  const double half_length = field.grid().half_length();
  static_assert(sizeof(double) == 8);
  std::memcpy(header + 12, &half_length, 8);
  out.write(reinterpret_cast<const char*>(header), kHeaderSize);

  const auto values = field.physical();
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write_snapshot: write failed for " + path);
}

Field read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_snapshot: cannot open " + path);
  unsigned char header[kHeaderSize];
  in.read(reinterpret_cast<char*>(header), kHeaderSize);
  if (!in || std::memcmp(header, kMagic, 4) != 0)
    throw std::runtime_error("read_snapshot: not a BQSF snapshot: " + path);
  const std::uint16_t version = get_u16(header + 4);
  if (version != kVersion)
    throw std::runtime_error("read_snapshot: unsupported version");
  const int dim = get_u16(header + 6);
  const int n = static_cast<int>(get_u32(header + 8));
  double half_length;
  std::memcpy(&half_length, header + 12, 8);

  GridSpec grid(dim, n, half_length);
  std::vector<double> values(grid.size());
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw std::runtime_error("read_snapshot: truncated file: " + path);
  return Field::from_physical(grid, std::move(values));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_series_csv(const std::string& path, std::span<const NormSeries> series) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_series_csv: cannot open " + path);
  out << "t,label,value\n";
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.size(); ++i)
      out << format_double(s.times[i]) << ',' << s.label << ','
          << format_double(s.values[i]) << '\n';
  }
  if (!out) throw std::runtime_error("write_series_csv: write failed for " + path);
}

std::vector<NormSeries> read_series_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_series_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_series_csv: empty file: " + path);

  std::map<std::string, std::size_t> index;
  std::vector<NormSeries> result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string t_str, label, v_str;
    if (!std::getline(ss, t_str, ',') || !std::getline(ss, label, ',') ||
        !std::getline(ss, v_str))
      throw std::runtime_error("read_series_csv: malformed line: " + line);
    const double t = std::stod(t_str);
    const double v = std::stod(v_str);
    auto [it, inserted] = index.try_emplace(label, result.size());
    if (inserted) {
      result.emplace_back();
      result.back().label = label;
    }
    result[it->second].push(t, v);
  }
  return result;
}

}  // namespace bqsim
