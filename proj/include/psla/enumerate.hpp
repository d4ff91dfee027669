#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "psla/arrangement.hpp"

namespace psla {

// Node identifier in the enumeration tree: indices[i] is the 1-based rank of
// the child taken at level i+2 (the unique 2-line PSLA is the root).
using DeweyCode = std::vector<int>;

inline std::string format_dewey(const DeweyCode& code) {
  std::string s;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(code[i]);
  }
  return s;
}

inline DeweyCode parse_dewey(std::string_view text) {
  DeweyCode code;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!(text[i] >= '0' && text[i] <= '9'))
      throw std::invalid_argument("malformed Dewey code");
    long v = 0;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      v = v * 10 + (text[i] - '0');
      if (v > 1'000'000'000L) throw std::invalid_argument("Dewey index overflow");
      ++i;
    }
    if (v < 1) throw std::invalid_argument("Dewey indices are positive");
    code.push_back(static_cast<int>(v));
    if (i < text.size()) {
      if (text[i] != '.') throw std::invalid_argument("malformed Dewey code");
      ++i;
      if (i == text.size()) throw std::invalid_argument("malformed Dewey code");
    }
  }
  if (code.empty()) throw std::invalid_argument("empty Dewey code");
  return code;
}

struct ShardSpec {
  int split_level = 8;
  std::uint64_t modulus = 1;
  std::uint64_t klass = 1;  // 1 <= klass <= modulus
};

// Sorted list of tree nodes to skip together with their subtrees.
struct ExcludeSet {
  std::vector<DeweyCode> codes;  // strictly increasing, prefix-before-extension
};

// Exclude-file format: one dot-separated code per line, sorted, no
// duplicates, LF endings.
inline ExcludeSet load_exclude(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open exclude file: " + path);
  ExcludeSet set;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    DeweyCode code;
    try {
      code = parse_dewey(line);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!set.codes.empty() && !(set.codes.back() < code))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": codes not in strictly increasing order");
    set.codes.push_back(std::move(code));
  }
  return set;
}

struct LevelCounts {
  std::array<std::uint64_t, kMaxLines + 1> nodes{};
};

// Thrown by a visitor to stop the traversal.
struct EnumAbort {};

namespace detail {

template <typename Visitor>
class TreeEnumerator {
 public:
  TreeEnumerator(int max_n, Visitor& visit, const ShardSpec* shard,
                 const ExcludeSet* exclude)
      : max_n_(max_n), visit_(visit), shard_(shard), exclude_(exclude) {
    if (max_n < 2 || max_n > kMaxLines)
      throw std::length_error("enumerate_tree: level out of range");
    if (shard_ && exclude_ && !exclude_->codes.empty())
      throw std::invalid_argument(
          "enumerate_tree: sharding and exclude sets cannot be combined");
    if (shard_ && (shard_->modulus < 1 || shard_->klass < 1 ||
                   shard_->klass > shard_->modulus))
      throw std::invalid_argument("enumerate_tree: bad shard spec");
  }

  LevelCounts run() {
    arr_ = trivial_arrangement();
    insert_line(arr_, CutPath{{1}});  // the unique 2-line PSLA
    visit_node(2);
    return counts_;
  }

 private:
  void visit_node(int level) {
    ++counts_.nodes[level];
    const bool expand = visit_(arr_, level, dewey_);
    if (!expand || level >= max_n_) return;
    if (shard_ && level == shard_->split_level) {
      ++shard_counter_;
      if (shard_counter_ % shard_->modulus != shard_->klass % shard_->modulus)
        return;
    }
    rank_[level] = 0;
    descend(level + 1, 0, 0);
  }

  void descend(int t, int entry, int depth) {
    if (depth == t - 1) {
      detail::finish_insert(arr_, t, path_[t][depth - 1]);
      dewey_.push_back(++rank_[t - 1]);
      if (!excluded_current()) visit_node(t);
      dewey_.pop_back();
      detail::rollback_insert(arr_, t);
      return;
    }
    detail::walk_upper_edges(arr_, t, entry, [&](int l, int a) {
      detail::splice(arr_, l, a, t);
      detail::chain(arr_, t, depth == 0 ? 0 : path_[t][depth - 1], l);
      path_[t][depth] = static_cast<Line>(l);
      descend(t, l, depth + 1);
      detail::unsplice(arr_, l, t);
      return false;
    });
  }

  bool excluded_current() {
    if (!exclude_) return false;
    const auto& codes = exclude_->codes;
    while (ex_ptr_ < codes.size() && codes[ex_ptr_] < dewey_) ++ex_ptr_;
    if (ex_ptr_ < codes.size() && codes[ex_ptr_] == dewey_) {
      ++ex_ptr_;
      return true;
    }
    return false;
  }

  int max_n_;
  Visitor& visit_;
  const ShardSpec* shard_;
  const ExcludeSet* exclude_;
  Arrangement arr_;
  DeweyCode dewey_;
  LevelCounts counts_{};
  std::uint64_t shard_counter_ = 0;
  std::size_t ex_ptr_ = 0;
  std::array<int, kMaxLines + 1> rank_{};
  std::array<std::array<Line, kMaxLines + 1>, kMaxLines + 1> path_{};
};

}  // namespace detail

// Depth-first generation of all PSLAs with up to max_n lines. The visitor is
// called as visit(arr, level, dewey) at every node, in Dewey order; its
// return value decides whether the node is expanded. With a shard only the
// split-level nodes whose running counter is congruent to klass mod modulus
// are expanded further; excluded nodes are skipped with their subtrees.
template <typename Visitor>
LevelCounts enumerate_tree(int max_n, Visitor&& visit,
                           const ShardSpec* shard = nullptr,
                           const ExcludeSet* exclude = nullptr) {
  detail::TreeEnumerator<Visitor> e(max_n, visit, shard, exclude);
  return e.run();
}

// All cutpaths of arr (for inserting line arr.n + 1), in generation order.
inline std::vector<CutPath> cutpaths(const Arrangement& arr) {
  const int t = arr.n + 1;
  if (t > kMaxLines) throw std::length_error("cutpaths: capacity exceeded");
  std::vector<CutPath> out;
  Arrangement a = arr;  // the walk splices the probe line in place
  std::array<Line, kMaxLines + 1> path{};
  auto rec = [&](auto&& self, int entry, int depth) -> void {
    if (depth == t - 1) {
      out.push_back(CutPath{{path.begin(), path.begin() + depth}});
      return;
    }
    detail::walk_upper_edges(a, t, entry, [&](int l, int aft) {
      detail::splice(a, l, aft, t);
      path[depth] = static_cast<Line>(l);
      self(self, l, depth + 1);
      detail::unsplice(a, l, t);
      return false;
    });
  };
  rec(rec, 0, 0);
  return out;
}

// Navigates the enumeration tree by a Dewey code. Returns the node's
// arrangement; on an invalid index reports the deepest valid prefix.
inline Arrangement arrangement_at(const DeweyCode& code) {
  Arrangement arr = trivial_arrangement();
  insert_line(arr, CutPath{{1}});
  DeweyCode prefix;
  for (int idx : code) {
    const auto paths = cutpaths(arr);
    if (idx < 1 || idx > static_cast<int>(paths.size()))
      throw std::out_of_range("invalid Dewey code; deepest valid prefix: " +
                              (prefix.empty() ? std::string("(root)")
                                              : format_dewey(prefix)));
    insert_line(arr, paths[idx - 1]);
    prefix.push_back(idx);
  }
  return arr;
}

}  // namespace psla
