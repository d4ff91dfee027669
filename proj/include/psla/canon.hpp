#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "psla/arrangement.hpp"

namespace psla {

// Local sequences matrix P and its positional inverse. Row P_i lists the
// crossings of line i left to right, starting at 0 for i >= 1; P_0 = [1..n].
// pos[i][j] is the 0-based position of j within row i.
struct LocalSequences {
  int n = 0;
  std::array<std::array<Line, kMaxLines + 1>, kMaxLines + 1> P{};
  std::array<std::array<std::uint8_t, kMaxLines + 1>, kMaxLines + 1> pos{};
};

inline LocalSequences build_local_sequences(const Arrangement& arr) {
  LocalSequences ls;
  ls.n = arr.n;
  for (int p = 1; p <= arr.n; ++p) {
    ls.P[0][p] = static_cast<Line>(p);
    ls.pos[0][p] = static_cast<std::uint8_t>(p - 1);
  }
  for (int i = 1; i <= arr.n; ++i) {
    int cur = 0;
    for (int p = 1; p <= arr.n; ++p) {
      ls.P[i][p] = static_cast<Line>(cur);
      ls.pos[i][cur] = static_cast<std::uint8_t>(p - 1);
      cur = arr.succ[i][cur];
    }
    assert(cur == 0);
  }
  return ls;
}

// Constant-time orientation of three distinct real lines, the exclusive-or
// of three simple tests. Flipped by any transposition of the arguments.
inline bool orient(const LocalSequences& ls, int i, int j, int k) {
  assert(i >= 1 && j >= 1 && k >= 1 && i != j && j != k && i != k);
  return ((i < j) != (j < k)) != (ls.pos[j][i] > ls.pos[j][k]);
}

// One choice of starting edge: the relabeling that makes line `to_new[x]`
// out of old line x. zero_line is the line that becomes the new line 0 and
// walk_pred the traversal sense of the labeling walk along it; mirror marks
// the competitors of the reversed chirality.
struct RelabelTable {
  std::array<Line, kMaxLines + 1> to_new{};
  Line zero_line = 0;
  bool walk_pred = false;
  bool mirror = false;
};

struct CanonResult {
  bool minimal = false;
  int hull = 0;
  int rotation = 0;  // same-chirality symmetries, identity included
  bool mirror = false;

  int group_order() const { return rotation * (mirror ? 2 : 1); }
  // Number of PSLAs representing this AOT: 2h / |G|.
  int psla_class_size() const { return 2 * hull / group_order(); }
};

// Group label: C_r rotations only, D_r with a mirror; C1 is the trivial group.
inline std::string classify_symmetry(const CanonResult& c) {
  return (c.mirror ? "D" : "C") + std::to_string(c.rotation);
}

namespace detail {

// An edge of the hull face on line c between the crossings (c,u) and (c,v),
// v = succ[c][u]. The line-0 edge is {0, n, 1}.
struct HullEdge {
  Line c, u, v;
};

inline int collect_hull_edges(const Arrangement& arr,
                              std::array<HullEdge, kMaxLines + 2>& out) {
  int cnt = 0;
  out[cnt++] = HullEdge{0, static_cast<Line>(arr.n), 1};
  int l = 1, v = 0;
  for (;;) {
    const int a = arr.pred[l][v];
    out[cnt++] = HullEdge{static_cast<Line>(l), static_cast<Line>(a),
                          static_cast<Line>(v)};
    if (a < l) return cnt;
    v = l;
    l = a;
  }
}

// Enumerates the 2h competitors as (c, start, walk_pred) triples, identity
// first. start is the crossing on c that receives the new label 1. The
// same-chirality walk keeps the marked cell on its left at the starting
// edge: the succ sense along the line-0 edge, the pred sense along a
// hull-face edge of a real line.
template <typename F>
void for_each_competitor(const Arrangement& arr, F&& f) {
  std::array<HullEdge, kMaxLines + 2> edges;
  const int h = collect_hull_edges(arr, edges);
  for (int e = 0; e < h; ++e)
    for (int w = 0; w < 2; ++w)
      f(static_cast<int>(edges[e].c), static_cast<int>(w ? edges[e].u : edges[e].v),
        w != 0);
}

inline bool competitor_mirror(int c, bool walk_pred) {
  return c == 0 ? walk_pred : !walk_pred;
}

// Re-cutting along a real line reverses the reading direction of every
// other real line; old line 0 and the cut line itself keep the sense of the
// labeling walk.
inline bool flipped_row(int c, int x, bool walk_pred) {
  return walk_pred != (c != 0 && x != 0 && x != c);
}

// New labels along line c: the first crossing from the starting edge gets 1.
// Old line 0 is relabeled like any other line.
inline void build_rho(const Arrangement& arr, int c, int start, bool walk_pred,
                      std::array<Line, kMaxLines + 1>& rho,
                      std::array<Line, kMaxLines + 1>& old_of_new) {
  int cur = start;
  for (int lbl = 1; lbl <= arr.n; ++lbl) {
    rho[cur] = static_cast<Line>(lbl);
    old_of_new[lbl] = static_cast<Line>(cur);
    cur = walk_pred ? arr.pred[c][cur] : arr.succ[c][cur];
  }
  assert(cur == start);
  rho[c] = 0;
  old_of_new[0] = static_cast<Line>(c);
}

}  // namespace detail

inline int competitor_count(const Arrangement& arr) { return 2 * hull_size(arr); }

// All 2h relabel tables (hull edges x chiralities), identity first.
inline std::vector<RelabelTable> competitors(const Arrangement& arr) {
  std::vector<RelabelTable> out;
  out.reserve(competitor_count(arr));
  detail::for_each_competitor(arr, [&](int c, int start, bool walk_pred) {
    RelabelTable rt;
    rt.zero_line = static_cast<Line>(c);
    rt.walk_pred = walk_pred;
    rt.mirror = detail::competitor_mirror(c, walk_pred);
    std::array<Line, kMaxLines + 1> old_of_new{};
    detail::build_rho(arr, c, start, walk_pred, rt.to_new, old_of_new);
    out.push_back(rt);
  });
  return out;
}

// Rewrites the pointer tables under a relabeling, reversing the rows that
// the re-cut reads backwards.
inline Arrangement apply_relabel(const Arrangement& arr, const RelabelTable& rt) {
  Arrangement out;
  out.n = arr.n;
  for (int j = 0; j <= arr.n; ++j) {
    const bool flip = detail::flipped_row(rt.zero_line, j, rt.walk_pred);
    for (int k = 0; k <= arr.n; ++k) {
      if (j == k || (j == 0 && k == 0)) continue;
      if (j != 0 && k != 0 && (j > arr.n || k > arr.n)) continue;
      const int s = flip ? arr.pred[j][k] : arr.succ[j][k];
      const int p = flip ? arr.succ[j][k] : arr.pred[j][k];
      out.succ[rt.to_new[j]][rt.to_new[k]] = rt.to_new[s];
      out.pred[rt.to_new[j]][rt.to_new[k]] = rt.to_new[p];
    }
  }
  return out;
}

// Scratch buffers for the canonicality test; reusable across calls.
struct CanonScratch {
  static constexpr int kMaxComps = 2 * (kMaxLines + 2);
  std::array<Line, kMaxComps> comp_c;
  std::array<Line, kMaxComps> comp_start;
  std::array<bool, kMaxComps> comp_walk_pred;
  std::array<std::array<Line, kMaxLines + 1>, kMaxComps> rho;
  std::array<std::array<Line, kMaxLines + 1>, kMaxComps> old_of_new;
  std::array<std::array<Line, kMaxLines + 1>, kMaxComps> row;
  LocalSequences ls;
};

struct ScreenResult {
  bool rejected = false;
  // Key-tying competitor indices in enumeration order (identity = 0).
  std::vector<int> survivors;
};

namespace detail {

// The comparison key equivalent to a competitor's relabeled P[1][n]: the
// walk distance along the new line 0 to the last line crossed by the new
// line 1. Computed without any renaming table. Returns the identity key + 1
// as soon as the walk exceeds it.
inline int screening_key(const Arrangement& arr, int c, int start, bool walk_pred,
                         int bound) {
  const int x1 = start;
  const int y = flipped_row(c, x1, walk_pred) ? arr.succ[x1][c] : arr.pred[x1][c];
  int cur = x1, s = 1;
  while (cur != y) {
    if (s == bound) return bound + 1;
    cur = walk_pred ? arr.pred[c][cur] : arr.succ[c][cur];
    ++s;
  }
  return s;
}

}  // namespace detail

// Cheap pre-filter: compares only the keys equivalent to each competitor's
// rightmost P_1 entry. Sound: it never rejects an arrangement that the full
// lex-min test would accept.
inline ScreenResult screen(const Arrangement& arr) {
  ScreenResult res;
  const int k1 = arr.pred[1][0];
  int idx = 0;
  detail::for_each_competitor(arr, [&](int c, int start, bool walk_pred) {
    if (res.rejected) {
      ++idx;
      return;
    }
    if (idx == 0) {
      res.survivors.push_back(0);  // identity
    } else {
      const int k = detail::screening_key(arr, c, start, walk_pred, k1);
      if (k < k1)
        res.rejected = true;
      else if (k == k1)
        res.survivors.push_back(idx);
    }
    ++idx;
  });
  if (res.rejected) res.survivors.clear();
  return res;
}

// Full canonicality test: the arrangement represents its AOT iff its P
// matrix is the smallest among all 2h competitors under the row-wise,
// right-to-left order (row P_1 first, entries at positions n..1).
inline CanonResult lex_min_test(const Arrangement& arr, CanonScratch& sc,
                                bool use_screening = true) {
  const int n = arr.n;
  assert(n >= 2);
  CanonResult res;
  res.hull = hull_size(arr);

  int ncomp = 0;
  detail::for_each_competitor(arr, [&](int c, int start, bool walk_pred) {
    sc.comp_c[ncomp] = static_cast<Line>(c);
    sc.comp_start[ncomp] = static_cast<Line>(start);
    sc.comp_walk_pred[ncomp] = walk_pred;
    ++ncomp;
  });
  assert(ncomp == 2 * res.hull);

  std::uint64_t alive = 0;
  const int k1 = arr.pred[1][0];
  if (use_screening) {
    for (int i = 1; i < ncomp; ++i) {
      const int k = detail::screening_key(arr, sc.comp_c[i], sc.comp_start[i],
                                          sc.comp_walk_pred[i], k1);
      if (k < k1) return res;  // not minimal
      if (k == k1) alive |= 1ull << i;
    }
  } else {
    alive = (ncomp >= 64 ? ~0ull : (1ull << ncomp) - 2);
  }

  if (alive != 0) {
    sc.ls = build_local_sequences(arr);
    for (std::uint64_t m = alive; m; m &= m - 1) {
      const int i = std::countr_zero(m);
      detail::build_rho(arr, sc.comp_c[i], sc.comp_start[i],
                        sc.comp_walk_pred[i], sc.rho[i], sc.old_of_new[i]);
    }
    for (int j = 1; j <= n && alive; ++j) {
      for (std::uint64_t m = alive; m; m &= m - 1) {
        const int i = std::countr_zero(m);
        const int c = sc.comp_c[i];
        const int x = sc.old_of_new[i][j];
        const bool flip = detail::flipped_row(c, x, sc.comp_walk_pred[i]);
        int cur = flip ? arr.pred[x][c] : arr.succ[x][c];
        for (int p = 2; p <= n; ++p) {
          sc.row[i][p] = sc.rho[i][cur];
          cur = flip ? arr.pred[x][cur] : arr.succ[x][cur];
        }
      }
      for (int p = n; p >= 2; --p) {
        const int idv = sc.ls.P[j][p];
        for (std::uint64_t m = alive; m; m &= m - 1) {
          const int i = std::countr_zero(m);
          const int v = sc.row[i][p];
          if (v < idv) return res;  // a competitor is strictly smaller
          if (v > idv) alive &= ~(1ull << i);
        }
      }
    }
  }

  res.minimal = true;
  res.rotation = 1;
  for (std::uint64_t m = alive; m; m &= m - 1) {
    const int i = std::countr_zero(m);
    if (detail::competitor_mirror(sc.comp_c[i], sc.comp_walk_pred[i]))
      res.mirror = true;
    else
      ++res.rotation;
  }
  assert(res.hull % res.rotation == 0);
  return res;
}

inline CanonResult lex_min_test(const Arrangement& arr) {
  CanonScratch sc;
  return lex_min_test(arr, sc);
}

}  // namespace psla
