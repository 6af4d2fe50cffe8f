#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gflat/field.hpp"

namespace gflat {

namespace {

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t next = line.find(',', pos);
    if (next == std::string::npos) next = line.size();
    std::string cell = line.substr(pos, next - pos);
    // trim
    std::size_t a = cell.find_first_not_of(" \t\r");
    std::size_t b = cell.find_last_not_of(" \t\r");
    if (a != std::string::npos) {
      cell = cell.substr(a, b - a + 1);
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc{} || ptr != cell.data() + cell.size())
        throw std::invalid_argument("grid csv: malformed number '" + cell + "'");
      out.push_back(v);
    }
    pos = next + 1;
  }
  return out;
}

std::string trimmed(std::string s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  return s.substr(a, b - a + 1);
}

}  // namespace

GridSpec read_grid_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("grid csv: empty input");
  if (trimmed(line) != "origin,spacing,counts")
    throw std::invalid_argument("grid csv: expected header 'origin,spacing,counts'");
  if (!std::getline(in, line)) throw std::invalid_argument("grid csv: missing metadata line");
  std::vector<double> meta = split_numbers(line);
  if (meta.empty() || meta.size() % 3 != 0)
    throw std::invalid_argument("grid csv: metadata must hold origin, spacing and counts per axis");
  const int dim = static_cast<int>(meta.size() / 3);

  GridSpec spec;
  spec.origin.resize(dim);
  spec.spacing.resize(dim);
  spec.counts.resize(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    spec.origin[i] = meta[static_cast<std::size_t>(i)];
    spec.spacing[i] = meta[static_cast<std::size_t>(dim + i)];
    const double c = meta[static_cast<std::size_t>(2 * dim + i)];
    if (c != std::floor(c) || c < 1.0)
      throw std::invalid_argument("grid csv: counts must be positive integers");
    spec.counts[static_cast<std::size_t>(i)] = static_cast<int>(c);
  }

  const std::size_t expected = spec.sample_count();
  spec.values.reserve(expected);
  while (std::getline(in, line)) {
    for (double v : split_numbers(line)) spec.values.push_back(v);
  }
  if (spec.values.size() != expected) {
    std::ostringstream msg;
    msg << "grid csv: expected " << expected << " samples, found " << spec.values.size();
    throw std::invalid_argument(msg.str());
  }
  return spec;
}

GridSpec read_grid_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("grid csv: cannot open '" + path + "'");
  return read_grid_csv(in);
}

void write_grid_csv(std::ostream& out, const GridSpec& spec) {
  const int dim = spec.dim();
  out << "origin,spacing,counts\n";
  out.precision(17);
  for (int i = 0; i < dim; ++i) out << (i ? "," : "") << spec.origin[i];
  for (int i = 0; i < dim; ++i) out << "," << spec.spacing[i];
  for (int i = 0; i < dim; ++i) out << "," << spec.counts[static_cast<std::size_t>(i)];
  out << "\n";
  // One line per run of the fastest axis.
  const std::size_t run = static_cast<std::size_t>(spec.counts.back());
  for (std::size_t i = 0; i < spec.values.size(); i += run) {
    for (std::size_t j = 0; j < run; ++j) out << (j ? "," : "") << spec.values[i + j];
    out << "\n";
  }
}

}  // namespace gflat
