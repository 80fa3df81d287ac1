#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdyn/graph.hpp"
#include "sdyn/profile.hpp"

namespace sdyn {

namespace detail {

// Shortest representation that parses back to the same double, so that
// save/load round-trips are byte-exact.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

inline double parse_double(std::string_view tok, const char* what) {
  if (tok == "inf" || tok == "Inf" || tok == "INF")
    return std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument(std::string(what) + ": bad number '" + std::string(tok) + "'");
  return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long parse_index(std::string_view tok, const char* what) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1)
    throw std::invalid_argument(std::string(what) + ": bad 1-based index '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Edge-list format: one line per edge "i j [w]", 1-based ids, '#' comments.
// The weight field is omitted when it equals 1.

inline void save_edge_list(const Graph& g, std::ostream& os) {
  for (const auto& e : g.edges()) {
    os << (e.a + 1) << ' ' << (e.b + 1);
    if (e.weight != 1.0) os << ' ' << detail::format_double(e.weight);
    os << '\n';
  }
}

inline Graph load_edge_list(std::istream& is) {
  std::vector<Edge> edges;
  long max_id = 0;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    const auto fields = detail::split_fields(
        std::string_view(line).substr(0, hash == std::string::npos ? line.size() : hash));
    if (fields.empty()) continue;
    if (fields.size() != 2 && fields.size() != 3)
      throw std::invalid_argument("edge list: expected 'i j [w]'");
    const long a = detail::parse_index(fields[0], "edge list");
    const long b = detail::parse_index(fields[1], "edge list");
    const double w = fields.size() == 3 ? detail::parse_double(fields[2], "edge list") : 1.0;
    max_id = std::max({max_id, a, b});
    edges.push_back({static_cast<int>(a - 1), static_cast<int>(b - 1), w});
  }
  if (edges.empty()) throw std::invalid_argument("edge list: no edges");
  return Graph(static_cast<int>(max_id), std::move(edges));
}

// ---------------------------------------------------------------------------
// Profile format: lines "i K" with K a nonnegative decimal or "inf";
// agents not listed are non-stubborn.

inline void save_profile(const StubbornnessProfile& p, std::ostream& os) {
  for (int i = 0; i < p.size(); ++i)
    if (p.is_stubborn(i)) os << (i + 1) << ' ' << detail::format_double(p.level(i)) << '\n';
}

inline StubbornnessProfile load_profile(std::istream& is, int n) {
  StubbornnessProfile p(n);
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    const auto fields = detail::split_fields(
        std::string_view(line).substr(0, hash == std::string::npos ? line.size() : hash));
    if (fields.empty()) continue;
    if (fields.size() != 2) throw std::invalid_argument("profile: expected 'i K'");
    const long i = detail::parse_index(fields[0], "profile");
    if (i > n) throw std::invalid_argument("profile: agent id out of range");
    p.set(static_cast<int>(i - 1), detail::parse_double(fields[1], "profile"));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Opinions format: lines "i x0_i"; every agent must be listed.

inline void save_opinions(const std::vector<double>& x0, std::ostream& os) {
  for (std::size_t i = 0; i < x0.size(); ++i)
    os << (i + 1) << ' ' << detail::format_double(x0[i]) << '\n';
}

inline std::vector<double> load_opinions(std::istream& is, int n) {
  std::vector<double> x0(n, std::numeric_limits<double>::quiet_NaN());
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    const auto fields = detail::split_fields(
        std::string_view(line).substr(0, hash == std::string::npos ? line.size() : hash));
    if (fields.empty()) continue;
    if (fields.size() != 2) throw std::invalid_argument("opinions: expected 'i x0'");
    const long i = detail::parse_index(fields[0], "opinions");
    if (i > n) throw std::invalid_argument("opinions: agent id out of range");
    x0[i - 1] = detail::parse_double(fields[1], "opinions");
  }
  for (double v : x0)
    if (std::isnan(v)) throw std::invalid_argument("opinions: missing agent");
  return x0;
}

// ---------------------------------------------------------------------------
// File helpers.

template <typename SaveFn>
void save_file(const std::string& path, SaveFn&& fn) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  fn(os);
}

inline void save_edge_list(const Graph& g, const std::string& path) {
  save_file(path, [&](std::ostream& os) { save_edge_list(g, os); });
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return load_edge_list(is);
}

inline void save_profile(const StubbornnessProfile& p, const std::string& path) {
  save_file(path, [&](std::ostream& os) { save_profile(p, os); });
}

inline StubbornnessProfile load_profile(const std::string& path, int n) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return load_profile(is, n);
}

inline void save_opinions(const std::vector<double>& x0, const std::string& path) {
  save_file(path, [&](std::ostream& os) { save_opinions(x0, os); });
}

inline std::vector<double> load_opinions(const std::string& path, int n) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return load_opinions(is, n);
}

}  // namespace sdyn
