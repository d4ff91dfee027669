#include <vector>

#include "doctest.h"
#include "psla/enumerate.hpp"
#include "reference_enum.hpp"
#include "test_util.hpp"

using namespace psla;

namespace {

refenum::Rows engine_rows(const Arrangement& arr) {
  refenum::Rows rows(arr.n);
  for (int j = 1; j <= arr.n; ++j)
    for (Line c : crossing_sequence(arr, j)) rows[j - 1].push_back(c);
  return rows;
}

}  // namespace

TEST_CASE("the reference enumerator visits the same tree in the same order") {
  const int max_n = 6;
  std::vector<std::uint64_t> ref_counts(max_n + 1, 0);
  std::vector<refenum::Rows> ref_leaves;
  refenum::enumerate_from_root(max_n, [&](const refenum::Rows& rows, int level) {
    ++ref_counts[level];
    if (level == max_n) ref_leaves.push_back(rows);
  });

  std::vector<refenum::Rows> engine_leaves;
  const LevelCounts counts =
      enumerate_tree(max_n, [&](const Arrangement& arr, int level, const DeweyCode&) {
        if (level == max_n) engine_leaves.push_back(engine_rows(arr));
        return true;
      });

  for (int level = 2; level <= max_n; ++level)
    CHECK(ref_counts[level] == counts.nodes[level]);
  REQUIRE(ref_leaves.size() == engine_leaves.size());
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < ref_leaves.size(); ++i)
    mismatches += ref_leaves[i] != engine_leaves[i];
  CHECK(mismatches == 0);
}
