#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "psla/arrangement.hpp"
#include "psla/canon.hpp"

namespace psla {

// Orientation including the pivot point 0, which lies below all other
// points; true means clockwise.
inline bool orient_cw(const LocalSequences& ls, int i, int j, int k) {
  if (i == 0) return j < k;
  if (j == 0) return i > k;
  if (k == 0) return i < j;
  return orient(ls, i, j, k);
}

// e[k] = number of point pairs whose connecting line has exactly k points
// below it, for the m = n+1 points of the AOT. Real pairs get their honest
// level (the pivot is below every such line); the near-vertical pivot pairs
// are assigned their minority side.
struct KEdgeVector {
  int points = 0;
  std::array<std::uint32_t, kMaxLines + 1> e{};
};

inline KEdgeVector k_edge_vector(const Arrangement& arr) {
  const int n = arr.n;
  KEdgeVector kv;
  kv.points = n + 1;
  const WiringDiagram wd = wiring_diagram(arr);
  // A swap at track t has n-t-1 real lines above the crossing, so the pair
  // line has n-t-1 real points below it, plus the pivot.
  for (int t : wd.swaps) kv.e[n - t] += 1;
  for (int i = 1; i <= n; ++i) kv.e[i <= (n + 1) / 2 ? i - 1 : n - i] += 1;
  return kv;
}

// Number of pairs that split the remaining m-2 points as evenly as
// possible. For odd m-2 both near-middle levels hold such pairs.
inline std::uint32_t halving_lines(const KEdgeVector& kv) {
  const int mid = (kv.points - 2) / 2;
  std::uint32_t h = kv.e[mid];
  if ((kv.points - 2) % 2 == 1) h += kv.e[mid + 1];
  return h;
}

inline constexpr std::uint64_t binom4(int m) {
  return m < 4 ? 0
               : static_cast<std::uint64_t>(m) * (m - 1) * (m - 2) * (m - 3) / 24;
}

// Rectilinear crossing number: 4-point subsets in convex position, decided
// by orientation tests alone.
inline std::uint32_t crossing_number(const LocalSequences& ls) {
  const int n = ls.n;
  auto inside = [&](int x, int a, int b, int c) {
    return orient_cw(ls, a, b, x) == orient_cw(ls, a, b, c) &&
           orient_cw(ls, b, c, x) == orient_cw(ls, b, c, a) &&
           orient_cw(ls, c, a, x) == orient_cw(ls, c, a, b);
  };
  std::uint32_t cr = 0;
  for (int p = 0; p <= n - 3; ++p)
    for (int q = p + 1; q <= n - 2; ++q)
      for (int r = q + 1; r <= n - 1; ++r)
        for (int s = r + 1; s <= n; ++s) {
          bool convex;
          if (p == 0)
            convex = !inside(r, 0, q, s);
          else
            convex = !inside(q, p, r, s) && !inside(r, p, q, s);
          cr += convex;
        }
  return cr;
}

// Crossing number from the k-edge vector (Lovasz-Vesztergombi-Wagner-Welzl):
// each pair line with k points below contributes k*(m-2-k) split pairs, and
// every non-convex quadruple is split three times, every convex one twice.
inline std::uint64_t crossing_number_from_kedges(const KEdgeVector& kv) {
  const int m = kv.points;
  std::uint64_t split = 0;
  for (int k = 0; k <= m - 2; ++k)
    split += static_cast<std::uint64_t>(k) * (m - 2 - k) * kv.e[k];
  return 3 * binom4(m) - split;
}

// Aggregation key: one combination of the per-AOT characteristics.
struct StatsKey {
  std::uint8_t points = 0;
  std::uint8_t hull = 0;
  bool sym_mirror = false;  // orders C groups before D groups
  std::uint8_t sym_rotation = 1;
  std::uint16_t halving = 0;
  std::uint32_t crossings = 0;

  auto operator<=>(const StatsKey&) const = default;

  int group_order() const { return sym_rotation * (sym_mirror ? 2 : 1); }
  std::string sym_label() const {
    return (sym_mirror ? "D" : "C") + std::to_string(sym_rotation);
  }
};

struct StatsLedger {
  std::map<StatsKey, std::uint64_t> counts;

  void record(const StatsKey& key, std::uint64_t count = 1) {
    counts[key] += count;
  }
  void merge(const StatsLedger& other) {
    for (const auto& [k, v] : other.counts) counts[k] += v;
  }
  std::uint64_t total(int points) const {
    std::uint64_t t = 0;
    for (const auto& [k, v] : counts)
      if (k.points == points) t += v;
    return t;
  }
};

// Results log: one line per nonzero key, sorted by (n, h, sym, halving,
// crossings), whitespace-separated fields.
inline void write_log(const StatsLedger& ledger, std::ostream& out) {
  out << "# n h sym halving crossings count\n";
  for (const auto& [k, v] : ledger.counts) {
    out << int(k.points) << ' ' << int(k.hull) << ' ' << k.sym_label() << ' '
        << k.halving << ' ' << k.crossings << ' ' << v << '\n';
  }
}

inline StatsLedger read_log(std::istream& in) {
  StatsLedger ledger;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int points, hull;
    std::string sym;
    std::uint32_t halving, crossings;
    std::uint64_t count;
    if (!(row >> points >> hull >> sym >> halving >> crossings >> count) ||
        sym.size() < 2 || (sym[0] != 'C' && sym[0] != 'D'))
      throw std::runtime_error("results log: malformed line: " + line);
    StatsKey key;
    key.points = static_cast<std::uint8_t>(points);
    key.hull = static_cast<std::uint8_t>(hull);
    key.sym_mirror = sym[0] == 'D';
    key.sym_rotation = static_cast<std::uint8_t>(std::stoi(sym.substr(1)));
    key.halving = static_cast<std::uint16_t>(halving);
    key.crossings = crossings;
    ledger.record(key, count);
  }
  return ledger;
}

}  // namespace psla
