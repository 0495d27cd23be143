#pragma once

// D-nets of two-sided ideals over a simple ring R = M(m, F_q). Such a ring
// has only the ideals 0 and R, so a D-net of order n is a Boolean n x n
// pattern with a full diagonal that is closed under sigma_ik sigma_kj <=
// sigma_ij, i.e. the reflexive transitive relations (preorders) on n points.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "netlat/error.hpp"

namespace netlat {

enum class IdealValue : std::uint8_t { Zero = 0, Full = 1 };

inline constexpr std::size_t kMaxNetOrder = 5;

/// An arbitrary n x n Boolean pattern, bit i*n + j for entry (i, j).
struct Pattern {
  std::size_t n = 0;
  std::uint32_t bits = 0;

  bool at(std::size_t i, std::size_t j) const { return bits >> (i * n + j) & 1u; }
  void set(std::size_t i, std::size_t j, bool v = true) {
    const std::uint32_t b = std::uint32_t{1} << (i * n + j);
    bits = v ? (bits | b) : (bits & ~b);
  }

  Pattern transposed() const {
    Pattern t{n, 0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (at(i, j))
          t.set(j, i);
    return t;
  }

  bool reflexive() const {
    for (std::size_t i = 0; i < n; ++i)
      if (!at(i, i))
        return false;
    return true;
  }

  bool transitive() const {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (at(i, k))
          for (std::size_t j = 0; j < n; ++j)
            if (at(k, j) && !at(i, j))
              return false;
    return true;
  }

  /// Row-major rows of 0/1 characters, e.g. {"101", "010", "001"}.
  std::vector<std::string> rows() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
      std::string r;
      for (std::size_t j = 0; j < n; ++j)
        r += at(i, j) ? '1' : '0';
      out.push_back(r);
    }
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (const auto &r : rows())
      s += (s.empty() ? "" : "/") + r;
    return s;
  }

  friend auto operator<=>(const Pattern &, const Pattern &) = default;
};

/// Parses "110/010/001".
inline Pattern parse_pattern(const std::string &text) {
  Pattern p;
  std::vector<std::string> rows;
  std::string cur;
  for (char c : text) {
    if (c == '/') {
      rows.push_back(cur);
      cur.clear();
    } else if (c == '0' || c == '1') {
      cur += c;
    } else {
      throw ConfigError("bad pattern character in '" + text + "'");
    }
  }
  rows.push_back(cur);
  p.n = rows.size();
  if (p.n == 0 || p.n > kMaxNetOrder)
    throw ConfigError("pattern order must be 1.." + std::to_string(kMaxNetOrder));
  for (std::size_t i = 0; i < p.n; ++i) {
    if (rows[i].size() != p.n)
      throw ConfigError("pattern '" + text + "' is not square");
    for (std::size_t j = 0; j < p.n; ++j)
      p.set(i, j, rows[i][j] == '1');
  }
  return p;
}

class DNet {
public:
  /// Throws ConfigError unless the pattern is reflexive and transitive.
  explicit DNet(Pattern p) : p_(p) {
    if (p.n == 0 || p.n > kMaxNetOrder)
      throw ConfigError("net order must be 1.." + std::to_string(kMaxNetOrder));
    if (!p.reflexive() || !p.transitive())
      throw ConfigError("pattern " + p.to_string() + " is not a D-net");
  }

  static DNet identity(std::size_t n) {
    Pattern p{n, 0};
    for (std::size_t i = 0; i < n; ++i)
      p.set(i, i);
    return DNet(p);
  }
  static DNet all_full(std::size_t n) {
    Pattern p{n, 0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        p.set(i, j);
    return DNet(p);
  }
  /// Identity net plus the listed off-diagonal Full entries (0-based).
  static DNet with_entries(std::size_t n,
                           const std::vector<std::pair<std::size_t, std::size_t>> &full) {
    Pattern p = identity(n).pattern();
    for (auto [i, j] : full)
      p.set(i, j);
    return DNet(p);
  }

  std::size_t n() const { return p_.n; }
  const Pattern &pattern() const { return p_; }
  IdealValue at(std::size_t i, std::size_t j) const {
    return p_.at(i, j) ? IdealValue::Full : IdealValue::Zero;
  }
  bool full(std::size_t i, std::size_t j) const { return p_.at(i, j); }

  /// Entrywise inclusion of ideals.
  bool leq(const DNet &o) const { return (p_.bits & ~o.p_.bits) == 0; }

  std::string to_string() const { return p_.to_string(); }

  friend auto operator<=>(const DNet &, const DNet &) = default;

private:
  Pattern p_;
};

/// (sigma^T)_ij = sigma_ji.
inline DNet transpose(const DNet &s) { return DNet(s.pattern().transposed()); }

/// All D-nets of order n in increasing bit order.
inline std::vector<DNet> enumerate_dnets(std::size_t n) {
  if (n == 0 || n > kMaxNetOrder)
    throw CapExceeded("net order " + std::to_string(n), kMaxNetOrder);
  const Pattern diag = DNet::identity(n).pattern();
  std::vector<std::size_t> off;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j)
        off.push_back(i * n + j);
  std::vector<DNet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << off.size()); ++m) {
    Pattern p = diag;
    for (std::size_t b = 0; b < off.size(); ++b)
      if (m >> b & 1u)
        p.bits |= std::uint32_t{1} << off[b];
    if (p.transitive())
      out.emplace_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Second route to the D-net count: patterns equal to their own
/// reflexive-transitive closure, computed with Warshall's algorithm.
inline std::uint64_t count_dnets_by_closure(std::size_t n) {
  if (n == 0 || n > kMaxNetOrder)
    throw CapExceeded("net order " + std::to_string(n), kMaxNetOrder);
  std::uint64_t count = 0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * n)); ++m) {
    Pattern p{n, static_cast<std::uint32_t>(m)};
    if (!p.reflexive())
      continue;
    Pattern c = p;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (c.at(i, k))
          for (std::size_t j = 0; j < n; ++j)
            if (c.at(k, j))
              c.set(i, j);
    count += (c.bits == p.bits);
  }
  return count;
}

} // namespace netlat
