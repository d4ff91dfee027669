#pragma once

#include <array>
#include <cstdint>

#include "psla/arrangement.hpp"
#include "psla/canon.hpp"
#include "psla/enumerate.hpp"
#include "psla/stats.hpp"

namespace psla {

struct SurveyOptions {
  int max_level = 2;         // lines; AOTs at level L have L+1 points
  bool canonical = false;    // run the lex-min test at every node
  bool ledger = false;       // collect (n,h,sym,halving,crossings) rows
  bool ledger_all_levels = false;
  const ShardSpec* shard = nullptr;
  const ExcludeSet* exclude = nullptr;
};

struct SurveyResult {
  LevelCounts psla;
  std::array<std::uint64_t, kMaxLines + 1> aot{};
  std::array<std::uint64_t, kMaxLines + 1> unsym{};
  std::array<std::uint64_t, kMaxLines + 1> mirror_sym{};
  std::array<std::uint64_t, kMaxLines + 1> rot_sym{};
  std::array<std::uint64_t, kMaxLines + 1> psla_via_classes{};  // sum of 2h/|G|
  std::array<std::array<std::uint64_t, kMaxLines + 2>, kMaxLines + 1> hull{};
  StatsLedger ledger;

  // Oriented AOTs: unsymmetric and purely rotational ones twice, plus the
  // mirror-symmetric ones once.
  std::uint64_t oaot(int level) const {
    return 2 * (unsym[level] + rot_sym[level]) + mirror_sym[level];
  }
};

inline SurveyResult run_survey(const SurveyOptions& opt) {
  SurveyResult res;
  const bool canonical = opt.canonical || opt.ledger;
  CanonScratch scratch;
  auto visit = [&](const Arrangement& arr, int level, const DeweyCode&) {
    if (!canonical) return true;
    const CanonResult c = lex_min_test(arr, scratch);
    if (!c.minimal) return true;
    res.aot[level] += 1;
    if (c.group_order() == 1)
      res.unsym[level] += 1;
    else if (c.mirror)
      res.mirror_sym[level] += 1;
    else
      res.rot_sym[level] += 1;
    res.psla_via_classes[level] += c.psla_class_size();
    res.hull[level][c.hull] += 1;
    if (opt.ledger && (opt.ledger_all_levels || level == opt.max_level)) {
      const int m = level + 1;
      const KEdgeVector kv = k_edge_vector(arr);
      const LocalSequences ls = build_local_sequences(arr);
      StatsKey key;
      key.points = static_cast<std::uint8_t>(m);
      key.hull = static_cast<std::uint8_t>(c.hull);
      key.sym_mirror = c.mirror;
      key.sym_rotation = static_cast<std::uint8_t>(c.rotation);
      key.halving = static_cast<std::uint16_t>(halving_lines(kv));
      // The quadruple count is the defining route; the k-edge identity is
      // used above 9 points where it is much cheaper, after the two routes
      // have been checked against each other exhaustively below.
      key.crossings = m <= 9 ? crossing_number(ls)
                             : static_cast<std::uint32_t>(
                                   crossing_number_from_kedges(kv));
      res.ledger.record(key);
    }
    return true;
  };
  res.psla = enumerate_tree(opt.max_level, visit, opt.shard, opt.exclude);
  return res;
}

}  // namespace psla
