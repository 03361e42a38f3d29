#ifndef DCG_SEPSET_HPP_
#define DCG_SEPSET_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcg/graph.hpp"

namespace dcg {

// One statement "j _||_ k | S" with canonical endpoint order j < k and
// S a subset of V \ {j,k}.
struct SepStatement {
  int j = 0;
  int k = 0;
  NodeMask cond = 0;

  bool operator==(const SepStatement&) const = default;
};

// Bit index layout, frozen so serialized sets are portable: unordered pairs
// (j,k), j < k, in lexicographic order; for each pair the conditioning sets
// run in binary-counter order, bit i of the counter standing for the i-th
// smallest node of V \ {j,k}. There are C(p,2) * 2^(p-2) statements.
int pair_index(int p, int j, int k);
std::uint64_t statement_count(int p);
std::uint64_t statement_index(int p, int j, int k, NodeMask cond);
SepStatement statement_at(int p, std::uint64_t index);

// A set of separation statements (equally, of conditional-independence
// statements) as a fixed-layout bitset.
class SepSet {
 public:
  SepSet() = default;
  explicit SepSet(int p);

  int p() const { return p_; }
  std::uint64_t size() const { return statement_count(p_); }

  bool test(std::uint64_t index) const;
  bool test(int j, int k, NodeMask cond) const;
  void set(std::uint64_t index, bool value = true);
  void set(int j, int k, NodeMask cond, bool value = true);

  std::uint64_t count() const;
  bool is_subset_of(const SepSet& other) const;
  bool operator==(const SepSet& other) const;
  bool operator!=(const SepSet& other) const { return !(*this == other); }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::vector<std::uint64_t>& words() { return words_; }

  std::vector<SepStatement> statements() const;

 private:
  int p_ = 0;
  std::vector<std::uint64_t> words_;
};

// Text format, one statement per line in bit-index order:
//   <j> _||_ <k> | <s1>,<s2>,...
// with an empty conditioning set written "| -". Indices are 1-based.
std::string serialize_sepset(const SepSet& s);
SepSet parse_sepset(const std::string& text, int p);

std::string format_statement(int p, const SepStatement& st);

}  // namespace dcg

#endif  // DCG_SEPSET_HPP_
