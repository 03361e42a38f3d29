#include "dcg/selection.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dcg/errors.hpp"

namespace dcg {

namespace {
constexpr int kDefaultEnumCap = 5;
constexpr int kHardEnumCap = 8;
}  // namespace

void check_space(const SearchSpace& space) {
  if (space.p < 2 || space.p > kHardEnumCap)
    throw CapacityError("search spaces support 2 <= p <= 8");
  if (space.kind == SpaceKind::Explicit) {
    if (!std::is_sorted(space.ids.begin(), space.ids.end()) ||
        std::adjacent_find(space.ids.begin(), space.ids.end()) !=
            space.ids.end())
      throw std::invalid_argument("explicit id list must be strictly ascending");
    if (!space.ids.empty() && space.ids.back() >= dcg_space_size(space.p))
      throw std::invalid_argument("explicit id out of range");
    return;
  }
  if (space.p > kDefaultEnumCap && !space.override_cap)
    throw CapacityError(
        "enumeration beyond p = 5 requires the override flag (p = " +
        std::to_string(space.p) + ")");
  if (space.p > kDefaultEnumCap && space.override_cap)
    std::cerr << "warning: enumerating " << dcg_space_size(space.p)
              << " graphs at p = " << space.p << "\n";
}

std::uint64_t enumeration_bound(const SearchSpace& space) {
  return space.kind == SpaceKind::Explicit ? space.ids.size()
                                           : dcg_space_size(space.p);
}

void for_each_graph(const SearchSpace& space,
                    const std::function<void(std::uint64_t, const Dcg&)>& fn) {
  check_space(space);
  if (space.kind == SpaceKind::Explicit) {
    for (std::uint64_t id : space.ids) fn(id, graph_from_code(space.p, id));
    return;
  }
  const std::uint64_t n = dcg_space_size(space.p);
  for (std::uint64_t id = 0; id < n; ++id) {
    Dcg g = graph_from_code(space.p, id);
    if (space.kind == SpaceKind::AllDags && !is_dag(g)) continue;
    fn(id, g);
  }
}

std::uint64_t space_count(const SearchSpace& space) {
  std::uint64_t n = 0;
  for_each_graph(space, [&](std::uint64_t, const Dcg&) { ++n; });
  return n;
}

const char* assumption_name(Assumption a) {
  switch (a) {
    case Assumption::Cfc: return "cfc";
    case Assumption::Mdr: return "mdr";
    case Assumption::SmrIdentifiable: return "smr_id";
    case Assumption::SmrWeak: return "smr_weak";
    case Assumption::PMin: return "pmin";
    case Assumption::SgsMin: return "sgsmin";
  }
  return "?";
}

Assumption assumption_from_name(const std::string& name) {
  for (int i = 0; i < kAssumptionCount; ++i) {
    auto a = static_cast<Assumption>(i);
    if (name == assumption_name(a)) return a;
  }
  throw std::invalid_argument(
      "unknown assumption '" + name +
      "' (expected cfc|mdr|smr_id|smr_weak|pmin|sgsmin)");
}

namespace {

// Per-graph state for the scan kernel: adjacency rows plus subset-indexed
// union tables so one reachability iteration costs a handful of mask ops.
// p <= 8, so every table fits in 2^8 16-bit entries.
struct FastGraph {
  int p = 0;
  std::uint16_t ch[8]{}, pa[8]{};
  std::uint16_t desc[8]{};  // reflexive descendants
  std::uint16_t ancr[8]{};  // reflexive ancestors (transpose of desc)
  std::uint16_t chU[256], paU[256], actU[256];
  bool cyclic = false;

  void init(int p_, std::uint64_t code) {
    p = p_;
    for (int j = 0; j < p; ++j) ch[j] = pa[j] = 0;
    int bit = 0;
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < p; ++k) {
        if (j == k) continue;
        if ((code >> bit) & 1u) {
          ch[j] |= std::uint16_t(1u << k);
          pa[k] |= std::uint16_t(1u << j);
        }
        ++bit;
      }
    for (int b = 0; b < p; ++b) desc[b] = std::uint16_t(ch[b] | (1u << b));
    bool changed = true;
    while (changed) {
      changed = false;
      for (int b = 0; b < p; ++b) {
        std::uint16_t acc = desc[b], m = desc[b];
        while (m) {
          int c = std::countr_zero(static_cast<unsigned>(m));
          m &= std::uint16_t(m - 1);
          acc |= desc[c];
        }
        if (acc != desc[b]) {
          desc[b] = acc;
          changed = true;
        }
      }
    }
    cyclic = false;
    for (int b = 0; b < p && !cyclic; ++b) {
      std::uint16_t strict = 0, m = ch[b];
      while (m) {
        int c = std::countr_zero(static_cast<unsigned>(m));
        m &= std::uint16_t(m - 1);
        strict |= desc[c];
      }
      cyclic = (strict >> b) & 1u;
    }
    for (int v = 0; v < p; ++v) {
      std::uint16_t a = 0;
      for (int b = 0; b < p; ++b)
        if ((desc[b] >> v) & 1u) a |= std::uint16_t(1u << b);
      ancr[v] = a;
    }
    const int n = 1 << p;
    chU[0] = paU[0] = actU[0] = 0;
    for (int m = 1; m < n; ++m) {
      const int b = std::countr_zero(static_cast<unsigned>(m));
      const int rest = m & (m - 1);
      chU[m] = std::uint16_t(chU[rest] | ch[b]);
      paU[m] = std::uint16_t(paU[rest] | pa[b]);
      actU[m] = std::uint16_t(actU[rest] | ancr[b]);
    }
  }

  std::uint16_t reach(int j, std::uint16_t s) const {
    const std::uint16_t act = actU[s];
    std::uint16_t head = ch[j], tail = pa[j];
    for (;;) {
      const std::uint16_t src_h = std::uint16_t((head | tail) & ~s);
      const std::uint16_t src_t = std::uint16_t((tail & ~s) | (head & act));
      const std::uint16_t nh = std::uint16_t(head | chU[src_h]);
      const std::uint16_t nt = std::uint16_t(tail | paU[src_t]);
      if (nh == head && nt == tail) break;
      head = nh;
      tail = nt;
    }
    return std::uint16_t(head | tail);
  }

  // D_sep(g) into `words` while verifying containment in ci; false = some
  // separation falls outside ci (not Markov), detected without finishing.
  bool dsep_within(const SepSet& ci, std::uint64_t* words, int nwords,
                   std::uint32_t* count) const {
    for (int i = 0; i < nwords; ++i) words[i] = 0;
    std::uint32_t cnt = 0;
    for (int j = 0; j + 1 < p; ++j) {
      const std::uint16_t others = std::uint16_t(((1u << p) - 1) & ~(1u << j));
      for (std::uint16_t s = others;; s = std::uint16_t((s - 1) & others)) {
        std::uint16_t cand = 0;
        for (int k = j + 1; k < p; ++k)
          if (!((s >> k) & 1u)) cand |= std::uint16_t(1u << k);
        if (cand) {
          std::uint16_t sep = std::uint16_t(cand & ~reach(j, s));
          while (sep) {
            const int k = std::countr_zero(static_cast<unsigned>(sep));
            sep &= std::uint16_t(sep - 1);
            // inline statement_index: subset rank of s within V \ {j,k}
            std::uint64_t rank = 0;
            int bit = 0;
            for (int v = 0; v < p; ++v) {
              if (v == j || v == k) continue;
              if ((s >> v) & 1u) rank |= std::uint64_t{1} << bit;
              ++bit;
            }
            const std::uint64_t idx =
                (std::uint64_t(pair_index(p, j, k)) << (p - 2)) | rank;
            if (!((ci.words()[idx >> 6] >> (idx & 63)) & 1u)) return false;
            words[idx >> 6] |= std::uint64_t{1} << (idx & 63);
            ++cnt;
          }
        }
        if (s == 0) break;
      }
    }
    *count = cnt;
    return true;
  }

  void skeleton_info(std::uint16_t* total, std::uint32_t* pairs_mask) const {
    int t = 0;
    std::uint32_t pm = 0;
    for (int j = 0; j < p; ++j)
      for (int k = j + 1; k < p; ++k) {
        const bool real = ((ch[j] >> k) & 1u) || ((ch[k] >> j) & 1u);
        const bool virt =
            (std::uint16_t(ch[j] & ch[k]) & std::uint16_t(ancr[j] | ancr[k])) != 0;
        if (real || virt) {
          ++t;
          pm |= std::uint32_t{1} << pair_index(p, j, k);
        }
      }
    *total = std::uint16_t(t);
    *pairs_mask = pm;
  }
};

struct RawChunk {
  std::vector<GraphRecord> recs;
  std::vector<std::uint64_t> bits;  // words_per_set stride
};

void scan_range_fast(const SepSet& ci, const SearchSpace& space,
                     std::uint64_t lo, std::uint64_t hi, int nwords,
                     RawChunk& out) {
  FastGraph fg;
  std::vector<std::uint64_t> tmp(nwords);
  for (std::uint64_t pos = lo; pos < hi; ++pos) {
    const std::uint64_t id =
        space.kind == SpaceKind::Explicit ? space.ids[pos] : pos;
    fg.init(space.p, id);
    if (space.kind == SpaceKind::AllDags && fg.cyclic) continue;
    std::uint32_t cnt = 0;
    if (!fg.dsep_within(ci, tmp.data(), nwords, &cnt)) continue;
    GraphRecord rec;
    rec.id = id;
    rec.dsep_count = cnt;
    fg.skeleton_info(&rec.total_edges, &rec.pairs_mask);
    out.recs.push_back(rec);
    out.bits.insert(out.bits.end(), tmp.begin(), tmp.end());
  }
}

struct WordsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& w) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto x : w) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// MEC partition, per-assumption sets and flags; shared by the parallel scan
// and the serial reference so they can be compared verbatim.
SelectionReport assemble_report(const SepSet& ci, const SearchSpace& space,
                                std::vector<GraphRecord> records,
                                std::vector<std::uint64_t> bits, int nwords,
                                std::uint64_t scanned, const ScanOptions& opt) {
  SelectionReport r;
  r.p = space.p;
  r.space = space.kind;
  r.scanned = scanned;
  r.markov_count = records.size();
  r.ci_digest = ci_digest(ci);

  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, WordsHash>
      block_of;
  block_of.reserve(records.size() / 4 + 16);
  std::vector<std::uint64_t> key(nwords);
  for (std::size_t i = 0; i < records.size(); ++i) {
    key.assign(bits.begin() + i * nwords, bits.begin() + (i + 1) * nwords);
    auto it = block_of.find(key);
    std::uint32_t b;
    if (it == block_of.end()) {
      b = static_cast<std::uint32_t>(r.mec_sepsets.size());
      block_of.emplace(key, b);
      SepSet ss(space.p);
      ss.words() = key;
      r.mec_sepsets.push_back(std::move(ss));
      r.mec_sizes.push_back(0);
      r.mec_total_edges.push_back(records[i].total_edges);
      r.mec_dsep_count.push_back(records[i].dsep_count);
    } else {
      b = it->second;
    }
    records[i].mec = b;
    ++r.mec_sizes[b];
  }

  const std::size_t nblocks = r.mec_sepsets.size();

  // CFC: d-separation set equals the CI set exactly.
  std::vector<char> block_cfc(nblocks, 0);
  for (std::size_t b = 0; b < nblocks; ++b)
    block_cfc[b] = r.mec_sepsets[b] == ci;

  // MDR: the d-separation-count maximizers, provided they are a single MEC.
  std::vector<char> block_mdr(nblocks, 0);
  if (nblocks) {
    std::uint32_t maxd = 0;
    for (auto c : r.mec_dsep_count) maxd = std::max(maxd, c);
    std::vector<std::uint32_t> arg;
    for (std::size_t b = 0; b < nblocks; ++b)
      if (r.mec_dsep_count[b] == maxd) arg.push_back(b);
    if (arg.size() == 1) block_mdr[arg[0]] = 1;
  }

  // SMR: the total-edge minimizers; identifiable variant additionally
  // requires them to be a single MEC.
  std::vector<char> block_weak(nblocks, 0), block_smr(nblocks, 0);
  if (nblocks) {
    std::uint16_t mine = r.mec_total_edges[0];
    for (auto e : r.mec_total_edges) mine = std::min(mine, e);
    std::vector<std::uint32_t> arg;
    for (std::size_t b = 0; b < nblocks; ++b)
      if (r.mec_total_edges[b] == mine) {
        block_weak[b] = 1;
        arg.push_back(b);
      }
    if (arg.size() == 1) block_smr[arg[0]] = 1;
  }

  // P-minimality: no Markov block entails a strict superset of this block's
  // rules. Blocks with equal counts cannot be strict supersets, so compare
  // only against strictly larger counts.
  std::vector<char> block_pmin(nblocks, 1);
  {
    std::vector<std::uint32_t> order(nblocks);
    for (std::uint32_t b = 0; b < nblocks; ++b) order[b] = b;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return r.mec_dsep_count[a] < r.mec_dsep_count[b];
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
      const std::uint32_t b = order[i];
      for (std::size_t j = order.size(); j-- > i + 1;) {
        const std::uint32_t c = order[j];
        if (r.mec_dsep_count[c] <= r.mec_dsep_count[b]) break;
        if (r.mec_sepsets[b].is_subset_of(r.mec_sepsets[c])) {
          block_pmin[b] = 0;
          break;
        }
      }
    }
  }

  for (auto& rec : records) {
    rec.flags[static_cast<int>(Assumption::Cfc)] = block_cfc[rec.mec];
    rec.flags[static_cast<int>(Assumption::Mdr)] = block_mdr[rec.mec];
    rec.flags[static_cast<int>(Assumption::SmrIdentifiable)] =
        block_smr[rec.mec];
    rec.flags[static_cast<int>(Assumption::SmrWeak)] = block_weak[rec.mec];
    rec.flags[static_cast<int>(Assumption::PMin)] = block_pmin[rec.mec];
  }

  if (opt.with_sgs) {
    r.sgs_computed = true;
    const int idx = static_cast<int>(Assumption::SgsMin);
    const std::int64_t n = static_cast<std::int64_t>(records.size());
#ifdef _OPENMP
    const int nth = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 64) num_threads(nth)
#endif
    for (std::int64_t i = 0; i < n; ++i) {
      Dcg g = graph_from_code(space.p, records[i].id);
      records[i].flags[idx] = opt.sgs_exhaustive
                                  ? sgs_minimal_exhaustive(g, ci)
                                  : sgs_minimal_deletion(g, ci);
    }
  }

  r.records = std::move(records);

  for (int a = 0; a < kAssumptionCount; ++a) {
    bool any = false, one_mec = true, one_skel = true;
    std::uint32_t mec0 = 0, pm0 = 0;
    for (const auto& rec : r.records) {
      if (!rec.flags[a]) continue;
      if (!any) {
        mec0 = rec.mec;
        pm0 = rec.pairs_mask;
        any = true;
      } else {
        one_mec &= rec.mec == mec0;
        one_skel &= rec.pairs_mask == pm0;
      }
    }
    r.unique_mec[a] = any && one_mec;
    r.unique_skeleton[a] = any && one_skel;
  }
  return r;
}

}  // namespace

bool sgs_minimal_deletion(const Dcg& g, const SepSet& ci) {
  SepSet tmp(g.p);
  for (int j = 0; j < g.p; ++j)
    for (int k = 0; k < g.p; ++k) {
      if (!g.has_edge(j, k)) continue;
      Dcg sub = g;
      sub.remove_edge(j, k);
      if (all_dsep_within(sub, ci, tmp)) return false;
    }
  return true;
}

bool sgs_minimal_exhaustive(const Dcg& g, const SepSet& ci) {
  std::vector<std::pair<int, int>> edges;
  for (int j = 0; j < g.p; ++j)
    for (int k = 0; k < g.p; ++k)
      if (g.has_edge(j, k)) edges.emplace_back(j, k);
  const std::size_t m = edges.size();
  if (m > 20) throw CapacityError("exhaustive SGS fallback supports <= 20 edges");
  SepSet tmp(g.p);
  for (std::uint32_t rem = 1; rem < (1u << m); ++rem) {
    Dcg sub = g;
    for (std::size_t e = 0; e < m; ++e)
      if ((rem >> e) & 1u) sub.remove_edge(edges[e].first, edges[e].second);
    if (all_dsep_within(sub, ci, tmp)) return false;
  }
  return true;
}

SelectionReport markov_scan(const SepSet& ci, const SearchSpace& space,
                            const ScanOptions& opt) {
  SearchSpace sp = space;
  sp.override_cap = sp.override_cap || opt.override_cap;
  check_space(sp);
  if (ci.p() != sp.p) throw std::invalid_argument("sepset dimension mismatch");
  const int nwords = static_cast<int>(ci.words().size());
  const std::uint64_t bound = enumeration_bound(sp);

#ifdef _OPENMP
  const int nth = opt.threads > 0 ? opt.threads : omp_get_max_threads();
#else
  const int nth = 1;
#endif
  const std::uint64_t chunk =
      std::max<std::uint64_t>(4096, bound / (std::uint64_t(nth) * 16 + 1));
  const std::uint64_t nchunks = bound ? (bound + chunk - 1) / chunk : 0;
  std::vector<RawChunk> chunks(nchunks);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nth)
#endif
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
    const std::uint64_t lo = std::uint64_t(c) * chunk;
    const std::uint64_t hi = std::min(bound, lo + chunk);
    scan_range_fast(ci, sp, lo, hi, nwords, chunks[c]);
  }

  std::vector<GraphRecord> records;
  std::vector<std::uint64_t> bits;
  for (auto& c : chunks) {
    records.insert(records.end(), c.recs.begin(), c.recs.end());
    bits.insert(bits.end(), c.bits.begin(), c.bits.end());
  }
  std::uint64_t scanned = bound;
  return assemble_report(ci, sp, std::move(records), std::move(bits), nwords,
                         scanned, opt);
}

SelectionReport markov_scan_serial(const SepSet& ci, const SearchSpace& space,
                                   const ScanOptions& opt) {
  SearchSpace sp = space;
  sp.override_cap = sp.override_cap || opt.override_cap;
  check_space(sp);
  if (ci.p() != sp.p) throw std::invalid_argument("sepset dimension mismatch");
  const int nwords = static_cast<int>(ci.words().size());
  std::vector<GraphRecord> records;
  std::vector<std::uint64_t> bits;
  std::uint64_t scanned = 0;
  for_each_graph(sp, [&](std::uint64_t id, const Dcg& g) {
    ++scanned;
    SepSet ds = all_dsep(g);
    if (!ds.is_subset_of(ci)) return;
    GraphRecord rec;
    rec.id = id;
    rec.dsep_count = static_cast<std::uint32_t>(ds.count());
    SkeletonInfo sk = skeleton(g);
    rec.total_edges = static_cast<std::uint16_t>(sk.total_edges);
    for (auto [j, k] : sk.pairs)
      rec.pairs_mask |= std::uint32_t{1} << pair_index(g.p, j, k);
    records.push_back(rec);
    bits.insert(bits.end(), ds.words().begin(), ds.words().end());
  });
  scanned = enumeration_bound(sp);
  ScanOptions serial_opt = opt;
  serial_opt.threads = 1;
  return assemble_report(ci, sp, std::move(records), std::move(bits), nwords,
                         scanned, serial_opt);
}

std::vector<std::uint64_t> SelectionReport::assumption_set(Assumption a) const {
  std::vector<std::uint64_t> out;
  for (const auto& rec : records)
    if (rec.flags[static_cast<int>(a)]) out.push_back(rec.id);
  return out;
}

const GraphRecord* SelectionReport::find(std::uint64_t id) const {
  auto it = std::lower_bound(
      records.begin(), records.end(), id,
      [](const GraphRecord& r, std::uint64_t v) { return r.id < v; });
  return it != records.end() && it->id == id ? &*it : nullptr;
}

std::vector<std::uint64_t> select(const SepSet& ci, const SearchSpace& space,
                                  Assumption a, const ScanOptions& opt) {
  ScanOptions o = opt;
  o.with_sgs = a == Assumption::SgsMin;
  return markov_scan(ci, space, o).assumption_set(a);
}

std::string ci_digest(const SepSet& ci) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto x : ci.words()) {
    h ^= x;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string serialize_report(const SelectionReport& r) {
  std::ostringstream out;
  out << "# p=" << r.p << "\n";
  out << "# space="
      << (r.space == SpaceKind::AllDcgs
              ? "dcg"
              : r.space == SpaceKind::AllDags ? "dag" : "explicit")
      << "\n";
  out << "# ci_digest=" << r.ci_digest << "\n";
  out << "# scanned=" << r.scanned << "\n";
  out << "# markov_count=" << r.markov_count << "\n";
  out << "# mec_count=" << r.mec_sepsets.size() << "\n";
  for (int a = 0; a < kAssumptionCount; ++a)
    out << "# " << assumption_name(static_cast<Assumption>(a))
        << ": unique_mec=" << int(r.unique_mec[a])
        << " unique_skeleton=" << int(r.unique_skeleton[a]) << "\n";
  out << "graph_id,total_edges,dsep_count,mec_id,cfc,mdr,smr_id,smr_weak,"
         "pmin,sgsmin\n";
  for (const auto& rec : r.records) {
    out << rec.id << "," << rec.total_edges << "," << rec.dsep_count << ","
        << rec.mec;
    for (int a = 0; a < kAssumptionCount; ++a) out << "," << int(rec.flags[a]);
    out << "\n";
  }
  return out.str();
}

}  // namespace dcg
