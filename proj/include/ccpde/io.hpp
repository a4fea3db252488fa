#pragma once

// CSV and report emission. All numeric formatting goes through to_chars so
// output is locale-independent and byte-reproducible.

#include <array>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ccpde/grid.hpp"
#include "ccpde/solver.hpp"

namespace ccpde {

inline std::string fmt_double(double v) {
  std::array<char, 40> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline void write_hash_header(std::ostream& os, std::uint64_t config_hash) {
  std::array<char, 20> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), config_hash, 16);
  os << "# config_hash=" << std::string(buf.data(), res.ptr) << '\n';
}

/// "x1,...,xN,u" rows, one per node in lexicographic order.
inline void write_field_csv(std::ostream& os, const Grid& grid, const Field& u,
                            std::uint64_t config_hash) {
  grid.check_field(u);
  write_hash_header(os, config_hash);
  for (int d = 1; d <= grid.dim(); ++d) os << 'x' << d << ',';
  os << "u\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto x = grid.coords(i);
    for (int d = 0; d < grid.dim(); ++d) os << fmt_double(x[static_cast<std::size_t>(d)]) << ',';
    os << fmt_double(u[i]) << '\n';
  }
}

/// Reads back the "u" column of a field CSV (used for tabulated potentials
/// and round-trip checks). Skips comment lines and the header.
inline Field read_field_csv_values(std::istream& is) {
  Field values;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    const auto pos = line.find_last_of(',');
    const std::string cell = (pos == std::string::npos) ? line : line.substr(pos + 1);
    values.push_back(std::stod(cell));
  }
  return values;
}

inline void write_trace_csv(std::ostream& os, const std::vector<std::array<double, 3>>& trace,
                            std::uint64_t config_hash) {
  write_hash_header(os, config_hash);
  os << "iter,energy,kkt_residual\n";
  for (const auto& row : trace)
    os << static_cast<long long>(row[0]) << ',' << fmt_double(row[1]) << ','
       << fmt_double(row[2]) << '\n';
}

/// Plain-text "key: value" certificate block.
inline void write_certificate(std::ostream& os, const Grid& grid, const SolveReport& rep,
                              double pde_res, std::uint64_t config_hash,
                              const std::vector<std::pair<std::string, std::string>>& extra = {}) {
  write_hash_header(os, config_hash);
  for (const auto& [key, value] : extra) os << key << ": " << value << '\n';
  os << "converged: " << (rep.converged ? "true" : "false") << '\n';
  os << "iterations: " << rep.iterations << '\n';
  os << "energy: " << fmt_double(rep.energy) << '\n';
  os << "sup_norm: " << fmt_double(lp_norm(grid, rep.u, infinity)) << '\n';
  os << "kkt_residual: " << fmt_double(rep.kkt_residual) << '\n';
  os << "stationarity_margin: " << fmt_double(rep.stationarity_margin) << '\n';
  os << "pde_residual: " << fmt_double(pde_res) << '\n';
  os << "invariance_sup_norm_v: " << fmt_double(rep.invariance.sup_norm_v) << '\n';
  os << "invariance_slack: " << fmt_double(rep.invariance.slack) << '\n';
  os << "invariance_box_ok: " << (rep.invariance.box_ok ? "true" : "false") << '\n';
  os << "invariance_fixed_point_gap: " << fmt_double(rep.invariance.fixed_point_gap) << '\n';
  os << "certified: " << (rep.invariance.certified ? "true" : "false") << '\n';
}

}  // namespace ccpde
