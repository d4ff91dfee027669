#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "psla/canon.hpp"
#include "psla/enumerate.hpp"
#include "psla/pipeline.hpp"
#include "test_util.hpp"

using namespace psla;

namespace {

// Serializes a P matrix in the comparison order: rows P_1..P_n, entries
// right to left within each row.
std::string comparison_key(const LocalSequences& ls) {
  std::string key;
  for (int j = 1; j <= ls.n; ++j)
    for (int p = ls.n; p >= 1; --p) key.push_back(static_cast<char>(ls.P[j][p]));
  return key;
}

std::string min_class_key(const Arrangement& arr) {
  std::string best;
  for (const RelabelTable& rt : competitors(arr)) {
    const std::string key = comparison_key(build_local_sequences(apply_relabel(arr, rt)));
    if (best.empty() || key < best) best = key;
  }
  return best;
}

}  // namespace

TEST_CASE("local sequences of the five-line example") {
  const Arrangement arr = testutil::five_line_example();
  const LocalSequences ls = build_local_sequences(arr);
  const std::vector<Line> p0(ls.P[0].begin() + 1, ls.P[0].begin() + 6);
  CHECK(p0 == std::vector<Line>{1, 2, 3, 4, 5});
  const std::vector<Line> p2(ls.P[2].begin() + 1, ls.P[2].begin() + 6);
  CHECK(p2 == std::vector<Line>{0, 1, 4, 3, 5});
  CHECK(ls.pos[2][0] == 0);
  CHECK(ls.pos[2][1] == 1);
  CHECK(ls.pos[2][3] == 3);
  CHECK(ls.pos[2][4] == 2);
  CHECK(ls.pos[2][5] == 4);
}

TEST_CASE("positions invert the local sequences everywhere") {
  testutil::for_each_arrangement(6, [](const Arrangement& arr, int) {
    const LocalSequences ls = build_local_sequences(arr);
    for (int i = 0; i <= arr.n; ++i)
      for (int j = 0; j <= arr.n; ++j) {
        if (i == j || (i > 0 && j > 0 && (i > arr.n || j > arr.n))) continue;
        CHECK(ls.P[i][ls.pos[i][j] + 1] == j);
      }
  });
}

TEST_CASE("orientation of the five-line example") {
  const LocalSequences ls = build_local_sequences(testutil::five_line_example());
  CHECK(orient(ls, 1, 2, 3) == false);  // true xor true xor false
}

TEST_CASE("orientation parity: transpositions flip, rotations preserve") {
  testutil::for_each_arrangement(6, [](const Arrangement& arr, int level) {
    if (level < 3) return;
    const LocalSequences ls = build_local_sequences(arr);
    for (int i = 1; i <= arr.n; ++i)
      for (int j = 1; j <= arr.n; ++j)
        for (int k = 1; k <= arr.n; ++k) {
          if (i == j || j == k || i == k) continue;
          const bool o = orient(ls, i, j, k);
          CHECK(orient(ls, j, i, k) == !o);
          CHECK(orient(ls, j, k, i) == o);
        }
  });
}

// Independent oracle: in the wiring drawing, every crossing has definite
// coordinates, and whether it lies above or below the third wire is the
// sign of the triple.
TEST_CASE("orientation agrees with wiring-drawing coordinates") {
  testutil::for_each_arrangement(5, [](const Arrangement& arr, int level) {
    if (level < 3) return;
    const LocalSequences ls = build_local_sequences(arr);
    const WiringDiagram wd = wiring_diagram(arr);
    std::vector<int> on(arr.n + 2), track_of(arr.n + 1);
    for (int i = 1; i <= arr.n; ++i) {
      on[arr.n + 1 - i] = i;
      track_of[i] = arr.n + 1 - i;
    }
    for (int t : wd.swaps) {
      const int lo = std::min<int>(on[t], on[t + 1]);
      const int hi = std::max<int>(on[t], on[t + 1]);
      for (int j = 1; j <= arr.n; ++j) {
        if (j == lo || j == hi) continue;
        // the crossing sits between tracks t and t+1
        const bool above = t >= track_of[j];
        if (j > lo && j < hi)
          CHECK(orient(ls, lo, j, hi) == above);
        else if (j < lo)
          CHECK(orient(ls, j, lo, hi) == !above);
        else
          CHECK(orient(ls, lo, hi, j) == !above);
      }
      std::swap(on[t], on[t + 1]);
      track_of[on[t]] = t;
      track_of[on[t + 1]] = t + 1;
    }
  });
}

TEST_CASE("there are 2h competitors and the identity comes first") {
  testutil::for_each_arrangement(5, [](const Arrangement& arr, int level) {
    if (level < 2) return;
    const auto comps = competitors(arr);
    CHECK(static_cast<int>(comps.size()) == 2 * hull_size(arr));
    CHECK_FALSE(comps[0].mirror);
    for (int x = 0; x <= arr.n; ++x) CHECK(comps[0].to_new[x] == x);
  });
}

TEST_CASE("relabeling is a class function") {
  testutil::for_each_arrangement(5, [](const Arrangement& arr, int level) {
    if (level < 2) return;
    std::multiset<std::string> base;
    for (const RelabelTable& rt : competitors(arr)) {
      const Arrangement b = apply_relabel(arr, rt);
      CHECK_NOTHROW(validate(b));
      base.insert(comparison_key(build_local_sequences(b)));
    }
    // one representative per chirality is enough to keep this test fast
    for (int pick : {1, static_cast<int>(base.size()) - 1}) {
      const Arrangement b = apply_relabel(arr, competitors(arr)[pick]);
      std::multiset<std::string> again;
      for (const RelabelTable& rt : competitors(b))
        again.insert(comparison_key(build_local_sequences(apply_relabel(b, rt))));
      CHECK(again == base);
    }
  });
}

TEST_CASE("screening keeps convex position intact") {
  for (int n = 3; n <= 7; ++n) {
    const ScreenResult s = screen(testutil::convex_arrangement(n));
    CHECK_FALSE(s.rejected);
    CHECK(static_cast<int>(s.survivors.size()) == 2 * (n + 1));
  }
}

TEST_CASE("screening passes strictly more than the AOTs and fewer than all PSLAs") {
  std::uint64_t passing = 0, leaves = 0;
  testutil::for_each_arrangement(7, [&](const Arrangement& arr, int level) {
    if (level != 7) return;
    ++leaves;
    passing += !screen(arr).rejected;
  });
  CHECK(leaves == 24698);
  CHECK(passing > 3315);   // every lex-min representative survives
  CHECK(passing < 24698);  // and most arrangements are screened out
}

TEST_CASE("screening is sound and complete against the full test") {
  CanonScratch sc;
  testutil::for_each_arrangement(6, [&](const Arrangement& arr, int level) {
    if (level < 2) return;
    const CanonResult with = lex_min_test(arr, sc, true);
    const CanonResult without = lex_min_test(arr, sc, false);
    CHECK(with.minimal == without.minimal);
    if (with.minimal) {
      CHECK(with.rotation == without.rotation);
      CHECK(with.mirror == without.mirror);
      CHECK(with.hull == without.hull);
    }
    if (screen(arr).rejected) CHECK_FALSE(without.minimal);
  });
}

TEST_CASE("lex-min representatives partition the tree into AOT classes") {
  for (int n = 3; n <= 5; ++n) {
    std::map<std::string, std::uint64_t> class_size;
    std::map<std::string, CanonResult> class_min;
    CanonScratch sc;
    testutil::for_each_arrangement(n, [&](const Arrangement& arr, int level) {
      if (level != n) return;
      class_size[min_class_key(arr)] += 1;
      const CanonResult c = lex_min_test(arr, sc);
      if (c.minimal) {
        const std::string key = comparison_key(build_local_sequences(arr));
        CHECK(key == min_class_key(arr));
        class_min[key] = c;
      }
    });
    const std::uint64_t expected_classes[] = {0, 0, 0, 2, 3, 16};
    CHECK(class_size.size() == expected_classes[n]);
    CHECK(class_min.size() == expected_classes[n]);
    for (const auto& [key, c] : class_min)
      CHECK(class_size[key] == static_cast<std::uint64_t>(c.psla_class_size()));
  }
}

TEST_CASE("convex position is minimal with the full dihedral group") {
  CanonScratch sc;
  for (int n = 2; n <= 7; ++n) {
    const CanonResult c = lex_min_test(testutil::convex_arrangement(n), sc);
    CHECK(c.minimal);
    CHECK(c.hull == n + 1);
    CHECK(c.rotation == n + 1);
    CHECK(c.mirror);
    CHECK(c.psla_class_size() == 1);
  }
}

TEST_CASE("symmetry census for up to seven points") {
  SurveyOptions opt;
  opt.max_level = 6;
  opt.canonical = true;
  const SurveyResult res = run_survey(opt);
  CHECK(res.aot[2] == 1);
  CHECK(res.aot[3] == 2);
  CHECK(res.aot[4] == 3);
  CHECK(res.aot[5] == 16);
  CHECK(res.aot[6] == 135);
  CHECK(res.unsym[6] == 105);
  CHECK(res.mirror_sym[6] == 28);
  CHECK(res.rot_sym[6] == 2);
  CHECK(res.oaot(6) == 242);
  CHECK(res.oaot(5) == 20);
  // the class-size identity recovers the PSLA counts
  for (int level = 2; level <= 5; ++level)
    CHECK(res.psla_via_classes[level] == res.psla.nodes[level]);
}

TEST_CASE("rotation order divides the hull size") {
  CanonScratch sc;
  testutil::for_each_arrangement(6, [&](const Arrangement& arr, int level) {
    if (level < 2) return;
    const CanonResult c = lex_min_test(arr, sc);
    if (c.minimal) CHECK(c.hull % c.rotation == 0);
  });
}

TEST_CASE("group labels") {
  CanonResult c;
  c.rotation = 1;
  CHECK(classify_symmetry(c) == "C1");
  c.rotation = 3;
  CHECK(classify_symmetry(c) == "C3");
  c.mirror = true;
  CHECK(classify_symmetry(c) == "D3");
}
