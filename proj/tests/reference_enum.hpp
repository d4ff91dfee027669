#pragma once

// Reference enumerator used as an oracle for the optimized engine. It keeps
// an arrangement as plain per-line crossing sequences, rebuilds the face
// structure of the wiring diagram from scratch at every node with a
// union-find over grid cells, and threads new lines through the explicit
// dual DAG. No code is shared with the engine beyond the data format of a
// crossing sequence.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace refenum {

using Rows = std::vector<std::vector<int>>;  // rows[i-1] = partners of line i

struct Swap {
  int track, a, b;  // wires a and b cross on tracks track/track+1
};

inline std::vector<Swap> sweep(const Rows& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<int> on(n + 2, 0), at(n + 1, 0);
  for (int i = 1; i <= n; ++i) on[n + 1 - i] = i;
  auto next_of = [&](int l) {
    return at[l] < static_cast<int>(rows[l - 1].size()) ? rows[l - 1][at[l]] : 0;
  };
  std::vector<Swap> out;
  const int total = n * (n - 1) / 2;
  for (int k = 0; k < total; ++k) {
    int tr = -1;
    for (int t = 1; t < n; ++t) {
      const int a = on[t], b = on[t + 1];
      if (next_of(a) == b && next_of(b) == a) {
        tr = t;
        break;
      }
    }
    if (tr < 0) throw std::logic_error("reference sweep stuck");
    out.push_back({tr, on[tr], on[tr + 1]});
    ++at[on[tr]];
    ++at[on[tr + 1]];
    std::swap(on[tr], on[tr + 1]);
  }
  return out;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct DagEdge {
  int to;
  int line;
  int pos;  // where the new crossing goes in `line`'s row
  long long key;
};

struct FaceModel {
  int bottom = -1, top = -1;
  std::vector<std::vector<DagEdge>> out;
};

inline FaceModel faces(const Rows& rows) {
  const int n = static_cast<int>(rows.size());
  const std::vector<Swap> swaps = sweep(rows);
  const int regions = static_cast<int>(swaps.size()) + 1;

  // track of every line per region between consecutive swaps
  std::vector<std::vector<int>> track(regions, std::vector<int>(n + 1));
  for (int i = 1; i <= n; ++i) track[0][i] = n + 1 - i;
  for (int r = 1; r < regions; ++r) {
    track[r] = track[r - 1];
    std::swap(track[r][swaps[r - 1].a], track[r][swaps[r - 1].b]);
  }

  // cells (region, gap) with gap 0 below everything; a crossing at track t
  // separates gap t between its two regions
  Dsu dsu(regions * (n + 1));
  auto cell = [&](int r, int g) { return r * (n + 1) + g; };
  for (int r = 0; r + 1 < regions; ++r)
    for (int g = 0; g <= n; ++g)
      if (g != swaps[r].track) dsu.unite(cell(r, g), cell(r + 1, g));

  FaceModel fm;
  fm.out.resize(regions * (n + 1));
  fm.bottom = dsu.find(cell(0, 0));
  fm.top = dsu.find(cell(0, n));

  for (int l = 1; l <= n; ++l) {
    std::vector<int> cols;
    for (int k = 0; k < static_cast<int>(swaps.size()); ++k)
      if (swaps[k].a == l || swaps[k].b == l) cols.push_back(k);
    const int segs = static_cast<int>(cols.size()) + 1;
    for (int s = 0; s < segs; ++s) {
      const int first_region = s == 0 ? 0 : cols[s - 1] + 1;
      const long long key =
          s == segs - 1 ? std::numeric_limits<long long>::max() : cols[s];
      const int t = track[first_region][l];
      const int below = dsu.find(cell(first_region, t - 1));
      const int above = dsu.find(cell(first_region, t));
      fm.out[below].push_back({above, l, s, key});
    }
  }
  for (auto& edges : fm.out)
    std::sort(edges.begin(), edges.end(),
              [](const DagEdge& x, const DagEdge& y) { return x.key > y.key; });
  return fm;
}

template <typename Visit>
void enumerate(const Rows& rows, int level, int max_n, Visit&& visit) {
  visit(rows, level);
  if (level >= max_n) return;
  const FaceModel fm = faces(rows);
  std::vector<DagEdge> pending;
  auto rec = [&](auto&& self, int face) -> void {
    if (face == fm.top) {
      if (static_cast<int>(pending.size()) != level)
        throw std::logic_error("reference path has the wrong length");
      Rows child = rows;
      for (const DagEdge& e : pending)
        child[e.line - 1].insert(child[e.line - 1].begin() + e.pos, level + 1);
      child.emplace_back();
      for (const DagEdge& e : pending) child.back().push_back(e.line);
      enumerate(child, level + 1, max_n, visit);
      return;
    }
    for (const DagEdge& e : fm.out[face]) {
      pending.push_back(e);
      self(self, e.to);
      pending.pop_back();
    }
  };
  rec(rec, fm.bottom);
}

// Runs the reference machinery from the two-line root.
template <typename Visit>
void enumerate_from_root(int max_n, Visit&& visit) {
  enumerate(Rows{{2}, {1}}, 2, max_n, visit);
}

}  // namespace refenum
