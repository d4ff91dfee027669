#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "psla/arrangement.hpp"
#include "psla/enumerate.hpp"
#include "psla/rng.hpp"

namespace psla {

using uint128 = unsigned __int128;

// Faces of the arrangement with one directed edge per arrangement edge,
// oriented from the face below to the face above; source B, sink T. A
// source-to-sink path is exactly a cutpath.
struct DualDag {
  struct Edge {
    std::uint16_t head;
    Line line;
  };
  int lines = 0;
  int face_count = 0;
  int bottom = -1;
  int top = -1;
  std::vector<Edge> edges;           // grouped by tail face, rightmost first
  std::vector<std::uint32_t> first;  // face -> offset; size face_count + 1
};

namespace detail {

// Directed boundary edges carry a flag: for real lines 0 = eastward (face
// above), 1 = westward (face below); for line 0 the two affine copies of
// each arc, 0 = left side, 1 = right side.
struct DirEdge {
  int l, a, d;
};

inline DirEdge face_walk_next(const Arrangement& arr, DirEdge e) {
  if (e.l >= 1) {
    if (e.d == 0) {
      const int m = arr.succ[e.l][e.a];
      if (m == 0) return {0, e.l, 1};
      return {m, e.l, m > e.l ? 0 : 1};
    }
    const int m = arr.pred[e.l][e.a];
    if (m == 0) return {0, e.l, 0};
    return {m, e.l, m > e.l ? 1 : 0};
  }
  const int w = arr.succ[0][e.a];
  if (e.d == 0) {  // left-side arc; the wrap arc bounds the bottom face
    if (e.a == arr.n) return {1, 0, 1};
    return {w, 0, 0};
  }
  // right-side arc; the wrap arc bounds the top face
  if (e.a == arr.n) return {1, 0, 0};
  return {w, 0, 1};
}

}  // namespace detail

inline DualDag build_dual_dag(const Arrangement& arr) {
  const int n = arr.n;
  DualDag dag;
  dag.lines = n;

  constexpr int kStride = kMaxLines + 1;
  auto slot = [](int l, int a, int d) { return (l * kStride + a) * 2 + d; };
  std::array<std::int16_t, kStride * kStride * 2> face;
  face.fill(-1);

  std::vector<std::vector<detail::DirEdge>> cycles;
  auto trace = [&](detail::DirEdge e0) {
    if (face[slot(e0.l, e0.a, e0.d)] >= 0) return;
    const int f = dag.face_count++;
    cycles.emplace_back();
    detail::DirEdge e = e0;
    do {
      face[slot(e.l, e.a, e.d)] = static_cast<std::int16_t>(f);
      cycles.back().push_back(e);
      e = detail::face_walk_next(arr, e);
    } while (!(e.l == e0.l && e.a == e0.a && e.d == e0.d));
  };
  for (int l = 1; l <= n; ++l)
    for (int a = 0; a <= n; ++a) {
      if (a == l || a > n) continue;
      trace({l, a, 0});
      trace({l, a, 1});
    }
  for (int a = 1; a <= n; ++a) {
    trace({0, a, 0});
    trace({0, a, 1});
  }
  assert(dag.face_count == 1 + n + n * (n - 1) / 2);
  dag.bottom = face[slot(0, n, 0)];
  dag.top = face[slot(0, n, 1)];

  // Upper edges of each face = its westward boundary edges, one contiguous
  // run of the cycle, already in right-to-left order.
  dag.first.assign(dag.face_count + 1, 0);
  std::vector<std::vector<DualDag::Edge>> outs(dag.face_count);
  for (int f = 0; f < dag.face_count; ++f) {
    const auto& cyc = cycles[f];
    const int len = static_cast<int>(cyc.size());
    auto is_west = [&](int i) { return cyc[i].l >= 1 && cyc[i].d == 1; };
    int start = -1;
    for (int i = 0; i < len; ++i)
      if (is_west(i) && !is_west((i + len - 1) % len)) {
        start = i;
        break;
      }
    if (start < 0) continue;  // the top face has no upper edges
    for (int i = start; is_west(i % len) && i < start + len; ++i) {
      const auto& e = cyc[i % len];
      const int b = arr.pred[e.l][e.a];  // east-directed twin starts at (l,b)
      outs[f].push_back(DualDag::Edge{
          static_cast<std::uint16_t>(face[slot(e.l, b, 0)]),
          static_cast<Line>(e.l)});
    }
  }
  for (int f = 0; f < dag.face_count; ++f)
    dag.first[f + 1] = dag.first[f] + static_cast<std::uint32_t>(outs[f].size());
  dag.edges.reserve(dag.first[dag.face_count]);
  for (auto& o : outs) dag.edges.insert(dag.edges.end(), o.begin(), o.end());
  return dag;
}

namespace detail {

inline uint128 checked_add(uint128 a, uint128 b) {
  const uint128 s = a + b;
  if (s < a) throw std::overflow_error("count_paths: overflow");
  return s;
}

inline void paths_to_top(const DualDag& dag, std::vector<uint128>& cnt) {
  cnt.assign(dag.face_count, 0);
  std::vector<char> done(dag.face_count, 0);
  auto rec = [&](auto&& self, int f) -> uint128 {
    if (done[f]) return cnt[f];
    done[f] = 1;
    if (f == dag.top) return cnt[f] = 1;
    uint128 total = 0;
    for (std::uint32_t i = dag.first[f]; i < dag.first[f + 1]; ++i)
      total = checked_add(total, self(self, dag.edges[i].head));
    return cnt[f] = total;
  };
  rec(rec, dag.bottom);
}

}  // namespace detail

// Exact number of source-to-sink paths, i.e. of cutpaths.
inline uint128 count_paths(const DualDag& dag) {
  std::vector<uint128> cnt;
  detail::paths_to_top(dag, cnt);
  return cnt[dag.bottom];
}

inline std::uint64_t cutpath_count(const Arrangement& arr) {
  const uint128 c = count_paths(build_dual_dag(arr));
  if (c > ~0ull) throw std::overflow_error("cutpath_count: overflow");
  return static_cast<std::uint64_t>(c);
}

// The k-th source-to-sink path (1-based) in the cutpath generation order.
inline CutPath kth_cutpath(const DualDag& dag, std::uint64_t k) {
  std::vector<uint128> cnt;
  detail::paths_to_top(dag, cnt);
  if (k < 1 || uint128(k) > cnt[dag.bottom])
    throw std::out_of_range("kth_cutpath: rank out of range");
  CutPath path;
  uint128 rest = k;
  int f = dag.bottom;
  while (f != dag.top) {
    bool advanced = false;
    for (std::uint32_t i = dag.first[f]; i < dag.first[f + 1]; ++i) {
      const auto& e = dag.edges[i];
      if (rest <= cnt[e.head]) {
        path.crossings.push_back(e.line);
        f = e.head;
        advanced = true;
        break;
      }
      rest -= cnt[e.head];
    }
    if (!advanced) throw std::logic_error("kth_cutpath: ran out of edges");
  }
  return path;
}

enum class DiveStrategy { kUniform, kWeightedByChildren };

struct DiveStep {
  int level = 0;               // lines of the node whose child was chosen
  std::uint64_t children = 0;  // its number of cutpaths
  std::uint64_t chosen = 0;    // 1-based child index
  double prob = 0.0;           // selection probability
};

// One random root-to-depth dive. estimate[L] is the running unbiased
// estimate of the number of level-L nodes: the inverse of the product of
// the probabilities of the chosen children.
struct DiveRecord {
  int max_depth = 0;
  std::vector<DiveStep> steps;
  std::array<long double, kMaxLines + 1> estimate{};
  std::array<uint128, kMaxLines + 1> estimate_int{};  // exact, uniform only
  bool exact = false;
};

// Child weights under a strategy: uniform weights are all 1; the weighted
// strategy favors children in proportion to their own child counts.
inline std::vector<std::uint64_t> child_weights(const Arrangement& arr,
                                                const DualDag& dag,
                                                DiveStrategy strategy) {
  const std::uint64_t c = static_cast<std::uint64_t>(count_paths(dag));
  std::vector<std::uint64_t> w(c, 1);
  if (strategy == DiveStrategy::kWeightedByChildren) {
    Arrangement a = arr;
    for (std::uint64_t i = 0; i < c; ++i) {
      const CutPath p = kth_cutpath(dag, i + 1);
      const UndoToken tok = insert_line(a, p);
      w[i] = cutpath_count(a);
      remove_line(a, tok);
    }
  }
  return w;
}

inline DiveRecord random_dive(int max_depth, SplitMix64& rng,
                              DiveStrategy strategy = DiveStrategy::kUniform) {
  if (max_depth < 3 || max_depth > kMaxLines)
    throw std::length_error("random_dive: depth out of range");
  DiveRecord rec;
  rec.max_depth = max_depth;
  rec.exact = strategy == DiveStrategy::kUniform;

  Arrangement arr = trivial_arrangement();
  insert_line(arr, CutPath{{1}});

  long double est = 1.0L;
  uint128 est_int = 1;
  for (int level = 2; level < max_depth; ++level) {
    const DualDag dag = build_dual_dag(arr);
    const std::uint64_t c = static_cast<std::uint64_t>(count_paths(dag));
    std::uint64_t chosen;
    double prob;
    if (strategy == DiveStrategy::kUniform) {
      chosen = uniform_below(rng, c) + 1;
      prob = 1.0 / static_cast<double>(c);
      est *= static_cast<long double>(c);
      if (rec.exact) {
        const uint128 next = est_int * c;
        if (c != 0 && next / c != est_int)
          rec.exact = false;
        else
          est_int = next;
      }
    } else {
      const auto w = child_weights(arr, dag, strategy);
      std::uint64_t total = 0;
      for (std::uint64_t wi : w) total += wi;
      std::uint64_t x = uniform_below(rng, total);
      std::uint64_t j = 0;
      while (x >= w[j]) x -= w[j], ++j;
      chosen = j + 1;
      prob = static_cast<double>(w[j]) / static_cast<double>(total);
      est *= static_cast<long double>(total) / static_cast<long double>(w[j]);
    }
    rec.steps.push_back(DiveStep{level, c, chosen, prob});
    rec.estimate[level + 1] = est;
    if (rec.exact) rec.estimate_int[level + 1] = est_int;
    insert_line(arr, kth_cutpath(dag, chosen));
  }
  return rec;
}

struct LevelEstimate {
  int level = 0;
  std::uint64_t samples = 0;
  long double mean = 0.0L;
  long double variance = 0.0L;
  long double log2mean_over_n2 = 0.0L;
};

inline std::vector<LevelEstimate> aggregate_estimates(
    const std::vector<DiveRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate_estimates: empty");
  const int depth = records.front().max_depth;
  for (const auto& r : records)
    if (r.max_depth != depth)
      throw std::invalid_argument("aggregate_estimates: mixed depths");
  std::vector<LevelEstimate> out;
  for (int level = 3; level <= depth; ++level) {
    LevelEstimate le;
    le.level = level;
    le.samples = records.size();
    long double sum = 0.0L;
    for (const auto& r : records) sum += r.estimate[level];
    le.mean = sum / records.size();
    long double ss = 0.0L;
    for (const auto& r : records) {
      const long double d = r.estimate[level] - le.mean;
      ss += d * d;
    }
    le.variance = records.size() > 1 ? ss / (records.size() - 1) : 0.0L;
    le.log2mean_over_n2 =
        std::log2(le.mean) / (static_cast<long double>(level) * level);
    out.push_back(le);
  }
  return out;
}

inline void write_estimates_csv(const std::vector<LevelEstimate>& rows,
                                std::ostream& out) {
  out << "level,samples,mean,variance,log2mean_over_n2\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%llu,%.10Lg,%.10Lg,%.10Lg\n", r.level,
                  static_cast<unsigned long long>(r.samples), r.mean,
                  r.variance, r.log2mean_over_n2);
    out << buf;
  }
}

}  // namespace psla
