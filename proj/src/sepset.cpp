#include "dcg/sepset.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

#include "dcg/errors.hpp"

namespace dcg {

namespace {
constexpr int kMaxSepSetNodes = 12;

void check_p(int p) {
  if (p < 2 || p > kMaxSepSetNodes)
    throw CapacityError("separation sets support 2 <= p <= 12, got " +
                        std::to_string(p));
}
}  // namespace

int pair_index(int p, int j, int k) {
  return j * p - j * (j + 1) / 2 + (k - j - 1);
}

std::uint64_t statement_count(int p) {
  return std::uint64_t(p) * (p - 1) / 2 << (p - 2);
}

std::uint64_t statement_index(int p, int j, int k, NodeMask cond) {
  if (j > k) std::swap(j, k);
  if (j == k || j < 0 || k >= p)
    throw std::invalid_argument("bad statement endpoints");
  if (cond & (mask_bit(j) | mask_bit(k)))
    throw std::invalid_argument("conditioning set contains an endpoint");
  std::uint64_t rank = 0;
  int bit = 0;
  for (int v = 0; v < p; ++v) {
    if (v == j || v == k) continue;
    if (mask_test(cond, v)) rank |= std::uint64_t{1} << bit;
    ++bit;
  }
  return (std::uint64_t(pair_index(p, j, k)) << (p - 2)) | rank;
}

SepStatement statement_at(int p, std::uint64_t index) {
  const std::uint64_t per_pair = std::uint64_t{1} << (p - 2);
  int pi = static_cast<int>(index / per_pair);
  std::uint64_t rank = index % per_pair;
  SepStatement st;
  for (int j = 0; j < p; ++j) {
    int row = p - 1 - j;
    if (pi < row) {
      st.j = j;
      st.k = j + 1 + pi;
      break;
    }
    pi -= row;
  }
  int bit = 0;
  for (int v = 0; v < p; ++v) {
    if (v == st.j || v == st.k) continue;
    if ((rank >> bit) & 1u) st.cond |= mask_bit(v);
    ++bit;
  }
  return st;
}

SepSet::SepSet(int p) : p_(p) {
  check_p(p);
  words_.assign((statement_count(p) + 63) / 64, 0);
}

bool SepSet::test(std::uint64_t index) const {
  return (words_[index >> 6] >> (index & 63)) & 1u;
}

bool SepSet::test(int j, int k, NodeMask cond) const {
  return test(statement_index(p_, j, k, cond));
}

void SepSet::set(std::uint64_t index, bool value) {
  if (value)
    words_[index >> 6] |= std::uint64_t{1} << (index & 63);
  else
    words_[index >> 6] &= ~(std::uint64_t{1} << (index & 63));
}

void SepSet::set(int j, int k, NodeMask cond, bool value) {
  set(statement_index(p_, j, k, cond), value);
}

std::uint64_t SepSet::count() const {
  std::uint64_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

bool SepSet::is_subset_of(const SepSet& other) const {
  if (p_ != other.p_)
    throw std::invalid_argument("sepset dimension mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool SepSet::operator==(const SepSet& other) const {
  return p_ == other.p_ && words_ == other.words_;
}

std::vector<SepStatement> SepSet::statements() const {
  std::vector<SepStatement> out;
  const std::uint64_t n = size();
  for (std::uint64_t i = 0; i < n; ++i)
    if (test(i)) out.push_back(statement_at(p_, i));
  return out;
}

std::string format_statement(int p, const SepStatement& st) {
  std::ostringstream out;
  out << st.j + 1 << " _||_ " << st.k + 1 << " | ";
  if (st.cond == 0) {
    out << "-";
  } else {
    bool first = true;
    for (int v = 0; v < p; ++v)
      if (mask_test(st.cond, v)) {
        if (!first) out << ",";
        out << v + 1;
        first = false;
      }
  }
  return out.str();
}

std::string serialize_sepset(const SepSet& s) {
  std::ostringstream out;
  for (const auto& st : s.statements())
    out << format_statement(s.p(), st) << "\n";
  return out.str();
}

SepSet parse_sepset(const std::string& text, int p) {
  check_p(p);
  SepSet s(p);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = line;
    auto b = t.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) continue;
    auto e = t.find_last_not_of(" \t\r\n");
    t = t.substr(b, e - b + 1);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    int j = 0, k = 0;
    std::string ind, bar, cond;
    if (!(ls >> j >> ind >> k >> bar >> cond) || ind != "_||_" || bar != "|")
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected '<j> _||_ <k> | <list or ->'");
    if (j < 1 || j > p || k < 1 || k > p || j == k)
      throw ParseError("line " + std::to_string(lineno) +
                       ": bad endpoints");
    NodeMask m = 0;
    if (cond != "-") {
      std::istringstream cs(cond);
      std::string tok;
      while (std::getline(cs, tok, ',')) {
        int v = 0;
        try {
          std::size_t pos = 0;
          v = std::stoi(tok, &pos);
          if (pos != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ParseError("line " + std::to_string(lineno) +
                           ": malformed conditioning set");
        }
        if (v < 1 || v > p || v == j || v == k)
          throw ParseError("line " + std::to_string(lineno) +
                           ": conditioning node out of range or an endpoint");
        m |= mask_bit(v - 1);
      }
    }
    s.set(std::min(j, k) - 1, std::max(j, k) - 1, m);
  }
  return s;
}

}  // namespace dcg
