#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace psla {

inline constexpr int kMaxLines = 16;

// Pseudolines are numbered 1..n as they appear top to bottom on the left,
// i.e. by increasing slope. Line 0 is the auxiliary line at infinity; its
// crossings appear in the cyclic order 1,...,n.
using Line = std::uint8_t;

struct CutPath {
  // Lines crossed by the new pseudoline, in order from the bottom face B to
  // the top face T.
  std::vector<Line> crossings;
};

struct UndoToken {
  int line = 0;  // the line that was inserted; must still be the last one
  std::vector<Line> path;
};

// succ[j][k] is the line whose crossing with j immediately follows the
// crossing (j,k) along j, left to right; pred is the inverse. Rows are
// cyclic through the crossing with line 0: succ[j][0] is the first crossing
// on line j and succ[j][last] == 0. Row 0 runs cyclically over 1..n.
struct Arrangement {
  int n = 0;
  std::array<std::array<Line, kMaxLines + 1>, kMaxLines + 1> succ{};
  std::array<std::array<Line, kMaxLines + 1>, kMaxLines + 1> pred{};
};

// The root of everything: one pseudoline, no crossings.
inline Arrangement trivial_arrangement() {
  Arrangement a;
  a.n = 1;
  a.succ[0][1] = 1;
  a.pred[0][1] = 1;
  a.succ[1][0] = 0;
  a.pred[1][0] = 0;
  return a;
}

namespace detail {

// Insert the crossing (l,t) on the edge of line l that starts at the
// crossing (l,a).
inline void splice(Arrangement& arr, int l, int a, int t) {
  const int v = arr.succ[l][a];
  arr.succ[l][t] = static_cast<Line>(v);
  arr.pred[l][t] = static_cast<Line>(a);
  arr.succ[l][a] = static_cast<Line>(t);
  arr.pred[l][v] = static_cast<Line>(t);
}

inline void unsplice(Arrangement& arr, int l, int t) {
  const int a = arr.pred[l][t];
  const int v = arr.succ[l][t];
  arr.succ[l][a] = static_cast<Line>(v);
  arr.pred[l][v] = static_cast<Line>(a);
}

// Chain the next crossing onto the partially inserted line t.
inline void chain(Arrangement& arr, int t, int prev, int l) {
  arr.succ[t][prev] = static_cast<Line>(l);
  arr.pred[t][l] = static_cast<Line>(prev);
}

// Close line t's row and extend the cyclic row 0 once all crossings are in.
inline void finish_insert(Arrangement& arr, int t, int last) {
  arr.succ[t][last] = 0;
  arr.pred[t][0] = static_cast<Line>(last);
  arr.succ[0][t - 1] = static_cast<Line>(t);
  arr.succ[0][t] = 1;
  arr.pred[0][1] = static_cast<Line>(t);
  arr.pred[0][t] = static_cast<Line>(t - 1);
  arr.n = t;
}

inline void rollback_insert(Arrangement& arr, int t) {
  arr.succ[0][t - 1] = 1;
  arr.pred[0][1] = static_cast<Line>(t - 1);
  arr.n = t - 1;
}

// Walk the upper edges of the face that the partially inserted line t has
// entered through its crossing with `entry` (entry == 0 means the bottom
// face). Invokes f(l, a) for each boundary edge of line l between the
// crossings (l,a) and (l, succ[l][a]), rightmost edge first, which is the
// counterclockwise order around the face. Stops early if f returns true.
template <typename F>
bool walk_upper_edges(const Arrangement& arr, int t, int entry, F&& f) {
  int l, v;
  if (entry == 0) {
    // Around the bottom face: after the line-0 edge comes line 1's right ray.
    l = 1;
    v = 0;
  } else {
    // Follow the lower chain of the face eastward until it turns.
    int el = entry, ev = t;
    for (;;) {
      const int m = arr.succ[el][ev];
      if (m == 0) {  // around the right end of el
        l = arr.succ[0][el];
        v = 0;
        break;
      }
      if (m > el) {  // the chain continues on m
        ev = el;
        el = m;
      } else {  // right corner: the upper chain starts on m
        l = m;
        v = el;
        break;
      }
    }
  }
  for (;;) {
    const int a = arr.pred[l][v];
    if (f(l, a)) return true;
    if (a < l) return false;  // left corner (the 0 crossing counts as one)
    v = l;
    l = a;
  }
}

}  // namespace detail

// Inserts the next line (numbered arr.n + 1) along the given cutpath.
// Throws std::invalid_argument on a malformed path.
inline UndoToken insert_line(Arrangement& arr, const CutPath& path) {
  const int t = arr.n + 1;
  if (t > kMaxLines) throw std::length_error("insert_line: capacity exceeded");
  if (static_cast<int>(path.crossings.size()) != arr.n)
    throw std::invalid_argument("insert_line: malformed path (wrong length)");
  std::array<bool, kMaxLines + 1> seen{};
  for (Line c : path.crossings) {
    if (c < 1 || c > arr.n || seen[c])
      throw std::invalid_argument("insert_line: malformed path (not a permutation)");
    seen[c] = true;
  }
  int entry = 0, prev = 0, done = 0;
  for (Line want : path.crossings) {
    const bool found =
        detail::walk_upper_edges(arr, t, entry, [&](int l, int a) {
          if (l != want) return false;
          detail::splice(arr, l, a, t);
          return true;
        });
    if (!found) {
      for (int d = 0; d < done; ++d) detail::unsplice(arr, path.crossings[d], t);
      throw std::invalid_argument(
          "insert_line: malformed path (crossing not on the face boundary)");
    }
    detail::chain(arr, t, prev, want);
    entry = prev = want;
    ++done;
  }
  detail::finish_insert(arr, t, prev);
  return UndoToken{t, path.crossings};
}

// Undoes the most recent insert_line. Tokens must be applied in LIFO order.
inline void remove_line(Arrangement& arr, const UndoToken& token) {
  if (token.line != arr.n || arr.n < 2)
    throw std::logic_error("remove_line: undo discipline violation");
  for (Line l : token.path) detail::unsplice(arr, l, token.line);
  detail::rollback_insert(arr, token.line);
}

// Number of edges of the face of the arrangement that corresponds to the
// convex hull of the (n+1)-point abstract order type, line 0 included.
inline int hull_size(const Arrangement& arr) {
  int l = 1, v = 0, count = 1;  // start at 1 for the line-0 edge
  for (;;) {
    const int a = arr.pred[l][v];
    ++count;
    if (a < l) return count;
    v = l;
    l = a;
  }
}

// Crossing sequence of line j, left to right, excluding the 0 crossing.
inline std::vector<Line> crossing_sequence(const Arrangement& arr, int j) {
  std::vector<Line> seq;
  for (int cur = arr.succ[j][0]; cur != 0; cur = arr.succ[j][cur])
    seq.push_back(static_cast<Line>(cur));
  return seq;
}

// Consistency check of the pointer tables; throws std::logic_error.
inline void validate(const Arrangement& arr) {
  const int n = arr.n;
  if (n < 1 || n > kMaxLines) throw std::logic_error("validate: bad line count");
  for (int i = 1; i <= n; ++i) {
    if (arr.succ[0][i] != (i == n ? 1 : i + 1) ||
        arr.pred[0][i] != (i == 1 ? n : i - 1))
      throw std::logic_error("validate: row 0 is not cyclic");
  }
  for (int j = 1; j <= n; ++j) {
    std::array<bool, kMaxLines + 1> seen{};
    int cur = arr.succ[j][0], prev = 0, steps = 0;
    while (cur != 0) {
      if (cur == j || cur > n || seen[cur])
        throw std::logic_error("validate: row " + std::to_string(j) + " malformed");
      if (arr.pred[j][cur] != prev)
        throw std::logic_error("validate: pred/succ duality broken");
      seen[cur] = true;
      prev = cur;
      cur = arr.succ[j][cur];
      if (++steps > n) throw std::logic_error("validate: row does not close");
    }
    if (arr.pred[j][0] != prev)
      throw std::logic_error("validate: last-crossing pointer wrong");
    if (steps != n - 1)
      throw std::logic_error("validate: line " + std::to_string(j) +
                             " does not cross every other line");
  }
}

inline bool same_arrangement(const Arrangement& a, const Arrangement& b) {
  if (a.n != b.n) return false;
  for (int j = 0; j <= a.n; ++j)
    for (int k = 0; k <= a.n; ++k) {
      if (j == k) continue;
      if (j > 0 && k > 0 && (j > a.n || k > a.n)) continue;
      if (a.succ[j][k] != b.succ[j][k] || a.pred[j][k] != b.pred[j][k]) return false;
    }
  return true;
}

// Wires run on n horizontal tracks, track 1 at the bottom. Each swap value t
// crosses the wires currently on tracks t and t+1. Line i starts on track
// n+1-i (line 1 on top).
struct WiringDiagram {
  int n = 0;
  std::vector<int> swaps;
};

// Sweep that repeatedly crosses the lowest adjacent track pair whose next
// crossings are mutual. The low-track-first rule makes the output canonical.
inline WiringDiagram wiring_diagram(const Arrangement& arr) {
  const int n = arr.n;
  WiringDiagram wd;
  wd.n = n;
  if (n < 2) return wd;
  std::array<Line, kMaxLines + 2> on{};   // track -> line
  std::array<Line, kMaxLines + 1> nxt{};  // line -> next crossing partner
  for (int i = 1; i <= n; ++i) {
    on[n + 1 - i] = static_cast<Line>(i);
    nxt[i] = arr.succ[i][0];
  }
  auto mutual = [&](int tr) {
    const int a = on[tr], b = on[tr + 1];
    return nxt[a] == b && nxt[b] == a;
  };
  std::uint32_t cand = 0;
  for (int tr = 1; tr < n; ++tr)
    if (mutual(tr)) cand |= 1u << tr;
  const int total = n * (n - 1) / 2;
  wd.swaps.reserve(total);
  for (int k = 0; k < total; ++k) {
    int tr;
    for (;;) {
      if (cand == 0) throw std::logic_error("wiring_diagram: sweep stuck");
      tr = std::countr_zero(cand);
      if (mutual(tr)) break;
      cand &= cand - 1;  // stale candidate
    }
    cand &= ~(1u << tr);
    const int a = on[tr], b = on[tr + 1];
    wd.swaps.push_back(tr);
    on[tr] = static_cast<Line>(b);
    on[tr + 1] = static_cast<Line>(a);
    nxt[a] = arr.succ[a][b];
    nxt[b] = arr.succ[b][a];
    for (int d = tr > 1 ? tr - 1 : 1; d <= tr + 1 && d < n; ++d)
      if (mutual(d)) cand |= 1u << d;
  }
  return wd;
}

inline char wire_label(int line) {
  return static_cast<char>(line < 10 ? '0' + line : 'A' + line - 10);
}

// ASCII rendering: n wire rows interleaved with n-1 crossing rows, each
// 2*C(n,2)+1 characters wide, one column pair per swap. labels[i-1], when
// given, is the character for line i.
inline std::string render_wiring(const WiringDiagram& wd,
                                 const std::string& labels = {}) {
  const int n = wd.n;
  const int cols = 2 * static_cast<int>(wd.swaps.size()) + 1;
  auto label = [&](int line) {
    return line <= static_cast<int>(labels.size()) ? labels[line - 1]
                                                   : wire_label(line);
  };
  std::vector<std::string> rows(2 * n - 1, std::string(cols, ' '));
  std::array<int, kMaxLines + 2> on{};
  auto track_row = [&](int tr) -> std::string& { return rows[2 * (n - tr)]; };
  for (int tr = 1; tr <= n; ++tr) {
    on[tr] = n + 1 - tr;
    track_row(tr)[0] = label(on[tr]);
  }
  for (std::size_t k = 0; k < wd.swaps.size(); ++k) {
    const int t = wd.swaps[k];
    rows[2 * (n - t) - 1][2 * k + 1] = 'X';
    for (int tr = 1; tr <= n; ++tr)
      track_row(tr)[2 * k + 1] = (tr == t || tr == t + 1) ? ' ' : '-';
    std::swap(on[t], on[t + 1]);
    for (int tr = 1; tr <= n; ++tr) track_row(tr)[2 * k + 2] = label(on[tr]);
  }
  std::string out;
  out.reserve(rows.size() * (cols + 1));
  for (const auto& r : rows) {
    out += r;
    out += '\n';
  }
  return out;
}

}  // namespace psla
