#pragma once
// Distances to the cocycle/coboundary subgroups and the two expansion
// constants. Everything rests on one observation: both the codifferential
// norm and the distance to the subgroup are constant on cosets, so exact
// computation reduces to finding coset leaders (minimum-weight coset
// representatives). Three engines share that frame:
//   - a closed-form/Gray-code path for degree 0 over Z/2, where cocycles
//     are the locally constant cochains;
//   - a full-table scan enumerating all cochains by increasing weight,
//     keyed by syndrome (cocycles) or canonical quotient label
//     (coboundaries);
//   - depth-first search by target weight, with candidate support pruned
//     to a metric ball around supp c for the cocycle subgroup (the
//     locality result licenses exactly this restriction).

#include "cobex/classify.hpp"
#include "cobex/cochain.hpp"
#include "cobex/complex.hpp"
#include "cobex/errors.hpp"
#include "cobex/gf2.hpp"
#include "cobex/group.hpp"
#include "cobex/metric.hpp"
#include "cobex/parallel.hpp"
#include "cobex/rational.hpp"
#include "cobex/rng.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace cobex {

enum class Subgroup { cocycles, coboundaries };
enum class Variant { cocycle, coboundary };
enum class Algo { automatic, full_table, branch_and_bound, sampled };

inline const char* subgroup_name(Subgroup s) {
  return s == Subgroup::cocycles ? "cocycles" : "coboundaries";
}
inline const char* variant_name(Variant v) {
  return v == Variant::cocycle ? "cocycle" : "coboundary";
}

struct Budget {
  std::uint64_t table_limit = std::uint64_t(1) << 22;  // enumerated cochains
  std::uint64_t node_limit = std::uint64_t(1) << 28;   // search nodes / sweep
  int workers = 1;
  std::uint64_t samples = 64;  // sampled mode
  std::uint64_t seed = 1;
};

// budget exhaustion carries the certified bound reached so far
class budget_error : public error {
 public:
  budget_error(const std::string& what, std::size_t certified_lower,
               std::uint64_t nodes)
      : error(errc::search_budget_exceeded,
              what + " (certified lower bound " +
                  std::to_string(certified_lower) + ", " +
                  std::to_string(nodes) + " nodes; result is non-exact)"),
        certified_lower_bound(certified_lower),
        nodes_expanded(nodes) {}
  std::size_t certified_lower_bound;
  std::uint64_t nodes_expanded;
};

struct DistanceResult {
  std::size_t distance = 0;
  bool exact = true;
  std::vector<Cochain> minimizers;  // nearest subgroup elements, lex order
  bool minimizers_complete = false;
  std::string method;
  std::uint64_t work = 0;
};

struct ExpansionReport {
  std::string complex_name;
  int degree = 0;
  std::string group_name;
  Variant variant = Variant::cocycle;
  Subgroup measured_against = Subgroup::cocycles;
  bool degree0_substitution = false;  // coboundary variant at degree 0 is
                                      // measured against the cocycles
  ExtRational lambda;                 // empty optional = +infinity
  bool exact = true;
  std::vector<std::string> flags;
  std::optional<Cochain> witness;
  std::size_t witness_dstar_norm = 0;
  std::size_t witness_distance = 0;
  std::uint64_t cosets_examined = 0;
  std::uint64_t cochains_enumerated = 0;
  std::vector<std::uint64_t> leader_weight_histogram;  // full-table only
  std::string algorithm;
  double runtime_ms = 0.0;  // CSV output only; JSON reports omit timing
};

namespace detail {

// ---- dense helpers ---------------------------------------------------

inline std::vector<GroupElem> to_dense(const Cochain& c) {
  std::vector<GroupElem> dense(std::size_t(c.complex().cells(c.degree())), 0);
  for (auto& [cell, v] : c.entries()) dense[std::size_t(cell)] = v;
  return dense;
}

inline Cochain from_dense(const CellComplex& X, int degree,
                          const CoefficientGroup& A,
                          const std::vector<GroupElem>& dense) {
  Cochain c(X, degree, A);
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i]) c.set(int(i), dense[i]);
  return c;
}

// lexicographic order on (support, then values along the support)
inline bool support_value_less(const std::vector<int>& sa,
                               const std::vector<GroupElem>& va,
                               const std::vector<int>& sb,
                               const std::vector<GroupElem>& vb) {
  if (sa != sb) return sa < sb;
  return va < vb;
}

inline bool cochain_less(const Cochain& a, const Cochain& b) {
  std::vector<int> sa = a.support(), sb = b.support();
  if (sa != sb) return sa < sb;
  std::vector<GroupElem> va, vb;
  for (int cell : sa) va.push_back(a.value(cell));
  for (int cell : sb) vb.push_back(b.value(cell));
  return va < vb;
}

// ---- coset keys ------------------------------------------------------

// Computes, for a dense n-cochain, (a) the byte key identifying its coset
// modulo the chosen subgroup and (b) the Hamming norm of its
// codifferential. Keys: syndrome for cocycles (kernel of the
// codifferential), canonical reduced representative for coboundaries.
class CosetKeyer {
 public:
  CosetKeyer(const CellComplex& X, int degree, const CoefficientGroup& A,
             Subgroup subgroup, bool force_generic = false)
      : X_(&X), degree_(degree), group_(A), subgroup_(subgroup) {
    ncells_ = X.cells(degree);
    nsynd_ = degree < X.dim() ? X.cells(degree + 1) : 0;
    bit_path_ = A.is_z2() && !force_generic;
    if (bit_path_) {
      words_ = std::size_t(nsynd_ + 63) / 64;
      syn_cols_.assign(std::size_t(ncells_) * std::max<std::size_t>(words_, 1),
                       0);
      for (int cell = 0; cell < ncells_; ++cell)
        if (degree_ < X.dim())
          for (auto& [w, coeff] : X.cofaces(degree_, cell))
            if (coeff % 2) flip_word(syn_col(cell), w);
      if (subgroup_ == Subgroup::coboundaries) {
        solver_ = std::make_unique<CoboundarySolver>(X, degree_, A);
        label_words_ = std::size_t(ncells_ + 63) / 64;
        // canonical reduction is linear over a field: precompute per-cell
        // label columns once
        label_cols_.assign(
            std::size_t(ncells_) * std::max<std::size_t>(label_words_, 1), 0);
        for (int cell = 0; cell < ncells_; ++cell) {
          BitVec unit{std::size_t(ncells_)};
          unit.set(std::size_t(cell), true);
          BitVec red = solver_->bit_basis()->reduce(unit);
          auto& ws = red.words();
          for (std::size_t k = 0; k < ws.size(); ++k)
            label_col(cell)[k] = ws[k];
        }
      }
    } else {
      if (subgroup_ == Subgroup::coboundaries)
        solver_ = std::make_unique<CoboundarySolver>(X, degree_, A, true);
    }
  }

  std::size_t num_cells() const { return std::size_t(ncells_); }

  // total number of cosets in C^n / subgroup (needs |A|^ncells to fit)
  std::uint64_t num_cosets() const {
    if (subgroup_ == Subgroup::cocycles) {
      if (degree_ == X_->dim()) return 1;
      CoboundarySolver image(*X_, degree_ + 1, group_);
      return image.subgroup_size();
    }
    std::uint64_t total = 1;
    for (int i = 0; i < ncells_; ++i) total *= group_.order();
    return total / solver_->subgroup_size();
  }

  // coset key; equal keys <=> same coset modulo the subgroup
  std::string key(const std::vector<int>& support,
                  const std::vector<GroupElem>& dense) const {
    if (bit_path_) {
      if (subgroup_ == Subgroup::cocycles) {
        std::vector<std::uint64_t> syn(words_, 0);
        for (int cell : support)
          for (std::size_t k = 0; k < words_; ++k)
            syn[k] ^= syn_col(cell)[k];
        return words_to_bytes(syn);
      }
      std::vector<std::uint64_t> lab(label_words_, 0);
      for (int cell : support)
        for (std::size_t k = 0; k < label_words_; ++k)
          lab[k] ^= label_col(cell)[k];
      return words_to_bytes(lab);
    }
    if (subgroup_ == Subgroup::cocycles) return generic_syndrome_key(dense);
    return generic_label_key(dense);
  }

  // Hamming norm of the codifferential of the dense cochain
  std::size_t dstar_norm(const std::vector<int>& support,
                         const std::vector<GroupElem>& dense) const {
    if (nsynd_ == 0) return 0;
    if (bit_path_) {
      std::vector<std::uint64_t> syn(words_, 0);
      for (int cell : support)
        for (std::size_t k = 0; k < words_; ++k)
          syn[k] ^= syn_col(cell)[k];
      std::size_t n = 0;
      for (auto w : syn) n += std::size_t(std::popcount(w));
      return n;
    }
    std::map<int, GroupElem> acc;
    for (int cell : support)
      for (auto& [w, coeff] : X_->cofaces(degree_, cell)) {
        GroupElem cur = acc.count(w) ? acc[w] : 0;
        acc[w] = group_.add(cur, group_.scale(coeff, dense[std::size_t(cell)]));
      }
    std::size_t n = 0;
    for (auto& [w, v] : acc)
      if (v) ++n;
    return n;
  }

 private:
  std::uint64_t* syn_col(int cell) {
    return syn_cols_.data() + std::size_t(cell) * words_;
  }
  const std::uint64_t* syn_col(int cell) const {
    return syn_cols_.data() + std::size_t(cell) * words_;
  }
  std::uint64_t* label_col(int cell) {
    return label_cols_.data() + std::size_t(cell) * label_words_;
  }
  const std::uint64_t* label_col(int cell) const {
    return label_cols_.data() + std::size_t(cell) * label_words_;
  }
  static void flip_word(std::uint64_t* w, int bit) {
    w[std::size_t(bit) >> 6] ^= std::uint64_t(1) << (bit & 63);
  }
  static std::string words_to_bytes(const std::vector<std::uint64_t>& w) {
    std::string s(w.size() * 8, '\0');
    if (!w.empty()) std::memcpy(s.data(), w.data(), w.size() * 8);
    return s;
  }

  std::string generic_syndrome_key(const std::vector<GroupElem>& dense) const {
    // syndrome residues per factor, 2 bytes each, little-endian
    std::string out;
    out.resize(std::size_t(nsynd_) * group_.num_factors() * 2, '\0');
    std::size_t at = 0;
    for (std::size_t j = 0; j < group_.num_factors(); ++j) {
      std::int64_t m = group_.factors()[j];
      std::vector<std::int64_t> syn(std::size_t(nsynd_), 0);
      for (int cell = 0; cell < ncells_; ++cell) {
        if (!dense[std::size_t(cell)]) continue;
        std::int64_t r = group_.residue(dense[std::size_t(cell)], j);
        for (auto& [w, coeff] : X_->cofaces(degree_, cell))
          syn[std::size_t(w)] =
              (syn[std::size_t(w)] + coeff % m * r % m + m * m) % m;
      }
      for (auto v : syn) {
        out[at++] = char(v & 0xff);
        out[at++] = char((v >> 8) & 0xff);
      }
    }
    return out;
  }

  std::string generic_label_key(const std::vector<GroupElem>& dense) const {
    std::string out;
    out.resize(std::size_t(ncells_) * group_.num_factors() * 2, '\0');
    std::size_t at = 0;
    for (std::size_t j = 0; j < group_.num_factors(); ++j) {
      std::vector<std::int64_t> v(std::size_t(ncells_), 0);
      for (int cell = 0; cell < ncells_; ++cell)
        if (dense[std::size_t(cell)])
          v[std::size_t(cell)] = group_.residue(dense[std::size_t(cell)], j);
      auto red = solver_->factor_basis(j).reduce(v);
      for (auto x : red) {
        out[at++] = char(x & 0xff);
        out[at++] = char((x >> 8) & 0xff);
      }
    }
    return out;
  }

  const CellComplex* X_;
  int degree_;
  CoefficientGroup group_;
  Subgroup subgroup_;
  int ncells_ = 0;
  int nsynd_ = 0;
  bool bit_path_ = false;
  std::size_t words_ = 0;
  std::size_t label_words_ = 0;
  std::vector<std::uint64_t> syn_cols_;
  std::vector<std::uint64_t> label_cols_;
  std::unique_ptr<CoboundarySolver> solver_;
};

// ---- weight-ordered enumeration --------------------------------------

// |A|^ncells if it fits in a u64, otherwise nullopt
inline std::optional<std::uint64_t> space_size(const CoefficientGroup& A,
                                               std::size_t ncells) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < ncells; ++i) {
    if (total > (std::uint64_t(1) << 62) / A.order()) return std::nullopt;
    total *= A.order();
  }
  return total;
}

// Visits every cochain of exact weight w whose least support cell is
// constrained to `first_cell` (or unconstrained if first_cell < 0), in
// (support-lex, value-lex) order. visit returns false to stop. Returns
// the number visited.
template <class F>
std::uint64_t enumerate_weight(int ncells, const CoefficientGroup& A, int w,
                               int first_cell, F&& visit) {
  std::uint64_t count = 0;
  if (w <= 0 || w > ncells) return 0;
  int lo = first_cell < 0 ? 0 : first_cell;
  if (lo + w > ncells) return 0;
  std::vector<int> support(std::size_t(w), 0);
  support[0] = lo;
  for (int i = 1; i < w; ++i) support[std::size_t(i)] = lo + i;
  std::vector<GroupElem> dense(std::size_t(ncells), 0);
  std::uint64_t nonzero = A.order() - 1;
  std::vector<GroupElem> vals;
  for (;;) {
    vals.assign(std::size_t(w), 1);
    for (;;) {
      for (int i = 0; i < w; ++i)
        dense[std::size_t(support[std::size_t(i)])] = vals[std::size_t(i)];
      ++count;
      bool go = visit(support, dense);
      for (int i = 0; i < w; ++i)
        dense[std::size_t(support[std::size_t(i)])] = 0;
      if (!go) return count;
      int pos = w - 1;
      while (pos >= 0 && vals[std::size_t(pos)] == nonzero) {
        vals[std::size_t(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++vals[std::size_t(pos)];
    }
    // next combination; first element pinned when first_cell >= 0
    int min_move = first_cell < 0 ? 0 : 1;
    int i = w - 1;
    while (i >= min_move && support[std::size_t(i)] == ncells - w + i) --i;
    if (i < min_move) break;
    ++support[std::size_t(i)];
    for (int j = i + 1; j < w; ++j)
      support[std::size_t(j)] = support[std::size_t(j - 1)] + 1;
  }
  return count;
}

struct Leader {
  std::uint32_t weight = 0;
  std::size_t dstar = 0;
  std::vector<int> support;
  std::vector<GroupElem> values;
};

using LeaderTable = std::unordered_map<std::string, Leader>;

// merge block tables: per key keep the (weight, support, values)-least
inline void merge_tables(LeaderTable& into, LeaderTable&& from) {
  for (auto& [key, lead] : from) {
    auto it = into.find(key);
    if (it == into.end()) {
      into.emplace(key, std::move(lead));
      continue;
    }
    Leader& cur = it->second;
    bool better = lead.weight < cur.weight ||
                  (lead.weight == cur.weight &&
                   support_value_less(lead.support, lead.values, cur.support,
                                      cur.values));
    if (better) cur = std::move(lead);
  }
}

inline Leader make_leader(const CosetKeyer& keyer, const std::vector<int>& supp,
                          const std::vector<GroupElem>& dense) {
  Leader lead;
  lead.weight = std::uint32_t(supp.size());
  lead.dstar = keyer.dstar_norm(supp, dense);
  lead.support = supp;
  for (int cell : supp) lead.values.push_back(dense[std::size_t(cell)]);
  return lead;
}

// Full enumeration of coset leaders. Serial when workers == 1, scanning
// global (weight, support, values) order with early stop once every coset
// has a leader; block-parallel otherwise (one block per least support
// cell), merged by taking the tuple-minimum per coset. Serial first-seen
// is exactly that minimum, so worker count never changes the table.
inline LeaderTable build_leader_table(const CellComplex& X, int degree,
                                      const CoefficientGroup& A,
                                      const CosetKeyer& keyer,
                                      const Budget& budget,
                                      std::uint64_t* enumerated_out) {
  int ncells = X.cells(degree);
  auto total = space_size(A, std::size_t(ncells));
  require(total && *total <= budget.table_limit, errc::table_too_large,
          "cochain space of '" + X.name() + "' degree " +
              std::to_string(degree) + " over " + A.name() +
              " exceeds the table budget of " +
              std::to_string(budget.table_limit) +
              "; shrink the complex, raise the budget, or use the sampled "
              "(upper-bound, non-exact) mode");
  std::uint64_t want_cosets = keyer.num_cosets();
  std::vector<int> empty_support;
  std::vector<GroupElem> zero(std::size_t(ncells), 0);
  LeaderTable table;
  table.emplace(keyer.key(empty_support, zero), Leader{});
  std::uint64_t enumerated = 1;
  if (budget.workers <= 1) {
    bool done = table.size() >= want_cosets;
    for (int w = 1; w <= ncells && !done; ++w)
      enumerated += enumerate_weight(
          ncells, A, w, -1, [&](const auto& supp, const auto& dense) {
            auto key = keyer.key(supp, dense);
            if (!table.count(key)) {
              table.emplace(std::move(key), make_leader(keyer, supp, dense));
              if (table.size() >= want_cosets) done = true;
            }
            return !done;
          });
    if (enumerated_out) *enumerated_out = enumerated;
    return table;
  }
  auto locals = std::vector<LeaderTable>(std::size_t(ncells));
  std::vector<std::uint64_t> counts(std::size_t(ncells), 0);
  parallel_blocks(budget.workers, ncells, [&](int first) {
    LeaderTable local;
    std::uint64_t n = 0;
    for (int w = 1; w <= ncells; ++w)
      n += enumerate_weight(ncells, A, w, first,
                            [&](const auto& supp, const auto& dense) {
                              auto key = keyer.key(supp, dense);
                              if (!local.count(key))
                                local.emplace(std::move(key),
                                              make_leader(keyer, supp, dense));
                              return true;
                            });
    counts[std::size_t(first)] = n;
    locals[std::size_t(first)] = std::move(local);
  });
  for (auto& l : locals) merge_tables(table, std::move(l));
  for (auto c : counts) enumerated += c;
  if (enumerated_out) *enumerated_out = enumerated;
  return table;
}

// ---- degree-0 / Z2 subset sweep --------------------------------------

// The fast path treats a 0-cochain as a vertex subset. It applies when
// every 1-cell touches exactly zero or two vertices with odd coefficient:
// then cocycles are the subset-indicators constant on components, the
// codifferential norm is a cut size, and the distance to the cocycles is
// a sum of per-component minority counts.
inline bool degree0_sweep_applicable(const CellComplex& X,
                                     const CoefficientGroup& A) {
  if (!A.is_z2() || X.dim() < 1) return false;
  if (X.cells(0) < 1 || X.cells(0) > 63) return false;
  for (int e = 0; e < X.cells(1); ++e) {
    int odd = 0;
    for (auto& [v, coeff] : X.faces(1, e))
      if (coeff % 2) ++odd;
    if (odd != 0 && odd != 2) return false;
  }
  return true;
}

struct SweepBest {
  bool any = false;
  std::size_t num = 0, den = 0;
  std::uint64_t mask = 0;

  // true if (n2/d2, support of m2) improves on the current best
  bool improves(std::size_t n2, std::size_t d2, std::uint64_t m2) const {
    if (!any) return true;
    __uint128_t lhs = __uint128_t(n2) * den;
    __uint128_t rhs = __uint128_t(num) * d2;
    if (lhs != rhs) return lhs < rhs;
    // equal ratio: keep the lexicographically smaller support sequence
    std::uint64_t a = m2, b = mask;
    while (a && b) {
      int la = std::countr_zero(a), lb = std::countr_zero(b);
      if (la != lb) return la < lb;
      a &= a - 1;
      b &= b - 1;
    }
    return a == 0 && b != 0;  // shorter prefix wins
  }
};

struct SweepReport {
  bool any_positive = false;
  Rational lambda{0};
  std::vector<int> support;
  std::size_t num = 0, den = 0;
  std::uint64_t enumerated = 0;
  std::uint64_t num_cosets = 0;
};

inline SweepReport degree0_sweep(const CellComplex& X,
                                 const CoefficientGroup& A,
                                 const Budget& budget) {
  require(degree0_sweep_applicable(X, A), errc::bad_parameters,
          "subset sweep requires Z2 coefficients and unit-incidence edges");
  int N = X.cells(0);
  require((std::uint64_t(1) << N) <= budget.node_limit, errc::table_too_large,
          "subset sweep of 2^" + std::to_string(N) +
              " states exceeds the node budget of " +
              std::to_string(budget.node_limit) +
              "; raise the budget or use the sampled (non-exact) mode");
  // per-vertex syndrome columns over the edges with two odd endpoints
  int nedges = X.cells(1);
  std::size_t words = std::size_t(nedges + 63) / 64;
  std::vector<std::uint64_t> cols(std::size_t(N) * std::max<std::size_t>(words, 1), 0);
  for (int e = 0; e < nedges; ++e) {
    std::vector<int> odd;
    for (auto& [v, coeff] : X.faces(1, e))
      if (coeff % 2) odd.push_back(v);
    for (int v : odd)
      cols[std::size_t(v) * words + (std::size_t(e) >> 6)] ^=
          std::uint64_t(1) << (e & 63);
  }
  CellGraph graph = coboundary_graph(X, 0, A);
  auto comps = graph.components();
  std::vector<int> comp_of(std::size_t(N), 0);
  std::vector<int> comp_size(comps.size(), 0);
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    comp_size[ci] = int(comps[ci].size());
    for (int v : comps[ci]) comp_of[std::size_t(v)] = int(ci);
  }

  int prefix_bits = 0;
  if (budget.workers > 1) {
    while ((1 << prefix_bits) < budget.workers && prefix_bits < N - 1)
      ++prefix_bits;
  }
  int low_bits = N - prefix_bits;
  int nblocks = 1 << prefix_bits;
  auto block_best = std::vector<SweepBest>(std::size_t(nblocks));

  parallel_blocks(std::max(budget.workers, 1), nblocks, [&](int block) {
    std::vector<std::uint64_t> syn(words, 0);
    std::vector<int> cnt(comps.size(), 0);
    std::uint64_t cur = 0;
    auto flip = [&](int v) {
      bool was = (cur >> v) & 1;
      cur ^= std::uint64_t(1) << v;
      for (std::size_t k = 0; k < words; ++k)
        syn[k] ^= cols[std::size_t(v) * words + k];
      cnt[std::size_t(comp_of[std::size_t(v)])] += was ? -1 : +1;
    };
    for (int j = 0; j < prefix_bits; ++j)
      if ((block >> j) & 1) flip(low_bits + j);
    SweepBest best;
    auto consider = [&]() {
      std::size_t den = 0;
      for (std::size_t ci = 0; ci < comps.size(); ++ci)
        den += std::size_t(
            std::min(cnt[ci], comp_size[ci] - cnt[ci]));
      if (den == 0) return;
      std::size_t num = 0;
      for (std::size_t k = 0; k < words; ++k)
        num += std::size_t(std::popcount(syn[k]));
      if (best.improves(num, den, cur)) {
        best.any = true;
        best.num = num;
        best.den = den;
        best.mask = cur;
      }
    };
    consider();  // prefix-only subset (suffix all zero)
    std::uint64_t steps = std::uint64_t(1) << low_bits;
    for (std::uint64_t i = 1; i < steps; ++i) {
      flip(std::countr_zero(i));
      consider();
    }
    block_best[std::size_t(block)] = best;
  });

  SweepBest best;
  for (auto& b : block_best)
    if (b.any && best.improves(b.num, b.den, b.mask)) best = b;

  SweepReport out;
  out.enumerated = std::uint64_t(1) << N;
  out.num_cosets = std::uint64_t(1) << (N - int(comps.size()));
  if (best.any) {
    out.any_positive = true;
    out.lambda = Rational(std::int64_t(best.num), std::int64_t(best.den));
    out.num = best.num;
    out.den = best.den;
    for (int v = 0; v < N; ++v)
      if ((best.mask >> v) & 1) out.support.push_back(v);
  }
  return out;
}

// exact distance to the 0-cocycles over Z2: per-component minority count;
// minimizers are the majority-constant indicators (both on ties)
inline DistanceResult degree0_cocycle_distance(const Cochain& c,
                                               std::size_t cap) {
  const CellComplex& X = c.complex();
  CellGraph graph = coboundary_graph(X, 0, c.group());
  auto comps = graph.components();
  DistanceResult out;
  out.method = "closed-form";
  out.exact = true;
  std::vector<std::vector<int>> tied;  // component vertex lists with ties
  std::vector<std::vector<int>> forced_support;
  std::size_t dist = 0;
  for (auto& comp : comps) {
    std::vector<int> ones;
    for (int v : comp)
      if (c.value(v)) ones.push_back(v);
    std::size_t k = ones.size(), s = comp.size();
    dist += std::min(k, s - k);
    if (2 * k == s)
      tied.push_back(comp);
    else if (2 * k > s)
      forced_support.push_back(comp);
  }
  out.distance = dist;
  // enumerate the product of per-component choices (majority; both on tie)
  std::vector<Cochain> mins;
  std::uint64_t combos = tied.size() < 63 ? (std::uint64_t(1) << tied.size())
                                          : std::uint64_t(-1);
  bool truncated_enum = combos > 4096;
  if (truncated_enum) combos = 4096;
  for (std::uint64_t pick = 0; pick < combos; ++pick) {
    Cochain z(X, 0, c.group());
    for (auto& comp : forced_support)
      for (int v : comp) z.set(v, 1);
    for (std::size_t t = 0; t < tied.size(); ++t)
      if ((pick >> t) & 1)
        for (int v : tied[t]) z.set(v, 1);
    mins.push_back(std::move(z));
  }
  std::sort(mins.begin(), mins.end(), cochain_less);
  out.minimizers_complete = !truncated_enum && mins.size() <= cap;
  if (mins.size() > cap) mins.erase(mins.begin() + std::ptrdiff_t(cap), mins.end());
  out.minimizers = std::move(mins);
  out.work = std::uint64_t(X.cells(0));
  return out;
}

// ---- branch and bound -------------------------------------------------

struct BnbState {
  const CosetKeyer* keyer;
  const CoefficientGroup* group;
  std::vector<int> candidates;
  std::string target;
  std::uint64_t nodes = 0;
  std::uint64_t node_limit = 0;
  int ncells = 0;
  int target_weight = 0;  // all smaller weights already searched completely
  // per-search scratch
  std::vector<int> supp;
  std::vector<GroupElem> dense;
  std::vector<std::pair<std::vector<int>, std::vector<GroupElem>>> found;
};

inline void bnb_descend(BnbState& st, std::size_t next_cand, int remaining) {
  if (++st.nodes > st.node_limit)
    throw budget_error("distance search node limit hit",
                       std::size_t(st.target_weight), st.nodes);
  if (remaining == 0) {
    if (st.keyer->key(st.supp, st.dense) == st.target)
      st.found.emplace_back(st.supp, [&] {
        std::vector<GroupElem> vals;
        for (int cell : st.supp) vals.push_back(st.dense[std::size_t(cell)]);
        return vals;
      }());
    return;
  }
  for (std::size_t i = next_cand; i + std::size_t(remaining) <= st.candidates.size(); ++i) {
    int cell = st.candidates[i];
    st.supp.push_back(cell);
    for (GroupElem v = 1; v < st.group->order(); ++v) {
      st.dense[std::size_t(cell)] = v;
      bnb_descend(st, i + 1, remaining - 1);
    }
    st.dense[std::size_t(cell)] = 0;
    st.supp.pop_back();
  }
}

// exact distance by iterative deepening on the weight of e = c - z; for
// the cocycle subgroup the candidate support is confined to the
// weight-radius coboundary-metric ball around supp c, which is exactly
// what the locality result guarantees for minimizers
inline DistanceResult bnb_distance(const Cochain& c, Subgroup subgroup,
                                   const CosetKeyer& keyer, std::size_t cap,
                                   const Budget& budget) {
  const CellComplex& X = c.complex();
  int N = X.cells(c.degree());
  auto dense_c = to_dense(c);
  auto supp_c = c.support();
  BnbState st;
  st.keyer = &keyer;
  st.group = &c.group();
  st.target = keyer.key(supp_c, dense_c);
  st.node_limit = budget.node_limit;
  st.ncells = N;
  st.dense.assign(std::size_t(N), 0);
  std::optional<CellGraph> graph;
  if (subgroup == Subgroup::cocycles)
    graph.emplace(coboundary_graph(X, c.degree(), c.group()));
  DistanceResult out;
  out.method = "branch-and-bound";
  for (int w = 0; w <= N; ++w) {
    st.target_weight = w;
    if (subgroup == Subgroup::cocycles) {
      st.candidates = graph->ball(supp_c, w);
    } else {
      st.candidates.resize(std::size_t(N));
      for (int i = 0; i < N; ++i) st.candidates[std::size_t(i)] = i;
    }
    st.found.clear();
    st.supp.clear();
    bnb_descend(st, 0, w);
    if (!st.found.empty()) {
      out.distance = std::size_t(w);
      out.exact = true;
      std::vector<Cochain> mins;
      for (auto& [supp, vals] : st.found) {
        Cochain e(X, c.degree(), c.group());
        for (std::size_t i = 0; i < supp.size(); ++i)
          e.set(supp[i], vals[i]);
        mins.push_back(c - e);
      }
      std::sort(mins.begin(), mins.end(), cochain_less);
      mins.erase(std::unique(mins.begin(), mins.end()), mins.end());
      out.minimizers_complete = mins.size() <= cap;
      if (mins.size() > cap) mins.erase(mins.begin() + std::ptrdiff_t(cap), mins.end());
      out.minimizers = std::move(mins);
      out.work = st.nodes;
      return out;
    }
  }
  // unreachable: w = N always matches (e = c - z for any fixed z works at
  // some weight <= N; in the worst case e = c itself when 0 is in the
  // subgroup, which it always is)
  fail(errc::bad_parameters, "distance search exhausted all weights");
}

}  // namespace detail

// ---- public: subgroup distance ----------------------------------------

inline DistanceResult subgroup_distance(const Cochain& c, Subgroup subgroup,
                                        Algo algo = Algo::automatic,
                                        std::size_t cap = 64,
                                        const Budget& budget = {}) {
  const CellComplex& X = c.complex();
  const CoefficientGroup& A = c.group();
  int degree = c.degree();
  int N = X.cells(degree);

  // degree 0 has no (-1)-cochains: the coboundary subgroup is {0}
  if (subgroup == Subgroup::coboundaries && degree == 0) {
    DistanceResult out;
    out.distance = c.norm();
    out.exact = true;
    out.method = "closed-form";
    out.minimizers.emplace_back(X, 0, A);
    out.minimizers_complete = true;
    out.work = c.norm();
    return out;
  }
  // top degree: every cochain is a cocycle
  if (subgroup == Subgroup::cocycles && degree == X.dim()) {
    DistanceResult out;
    out.distance = 0;
    out.exact = true;
    out.method = "closed-form";
    out.minimizers.push_back(c);
    out.minimizers_complete = true;
    return out;
  }
  if (algo == Algo::automatic && subgroup == Subgroup::cocycles &&
      degree == 0 && detail::degree0_sweep_applicable(X, A))
    return detail::degree0_cocycle_distance(c, cap);

  detail::CosetKeyer keyer(X, degree, A, subgroup);
  if (algo == Algo::branch_and_bound)
    return detail::bnb_distance(c, subgroup, keyer, cap, budget);
  if (algo == Algo::full_table ||
      (algo == Algo::automatic &&
       detail::space_size(A, std::size_t(N)) &&
       *detail::space_size(A, std::size_t(N)) <= budget.table_limit)) {
    std::uint64_t enumerated = 0;
    auto table =
        detail::build_leader_table(X, degree, A, keyer, budget, &enumerated);
    auto dense_c = detail::to_dense(c);
    auto it = table.find(keyer.key(c.support(), dense_c));
    require(it != table.end(), errc::bad_parameters,
            "internal: coset of the query cochain missing from the table");
    DistanceResult out;
    out.method = "full-table";
    out.exact = true;
    out.distance = it->second.weight;
    out.work = enumerated;
    // collect every leader-weight representative of this coset
    std::vector<Cochain> mins;
    bool overflow = false;
    if (out.distance == 0) {
      mins.push_back(c);
    } else {
      const std::string& want = it->first;
      detail::enumerate_weight(
          N, A, int(out.distance), -1,
          [&](const auto& supp, const auto& dense) {
            if (keyer.key(supp, dense) == want) {
              Cochain e(X, degree, A);
              for (int cell : supp) e.set(cell, dense[std::size_t(cell)]);
              mins.push_back(c - e);
              if (mins.size() > cap + 1024) {
                // keep memory bounded; sort, trim, and remember truncation
                std::sort(mins.begin(), mins.end(), detail::cochain_less);
                mins.erase(mins.begin() + std::ptrdiff_t(cap), mins.end());
                overflow = true;
              }
            }
            return true;
          });
    }
    std::sort(mins.begin(), mins.end(), detail::cochain_less);
    mins.erase(std::unique(mins.begin(), mins.end()), mins.end());
    out.minimizers_complete = !overflow && mins.size() <= cap;
    if (mins.size() > cap) mins.erase(mins.begin() + std::ptrdiff_t(cap), mins.end());
    out.minimizers = std::move(mins);
    return out;
  }
  return detail::bnb_distance(c, subgroup, keyer, cap, budget);
}

// ---- public: expansion constant ---------------------------------------

inline ExpansionReport expansion_constant(const CellComplex& X, int degree,
                                          const CoefficientGroup& A,
                                          Variant variant,
                                          Algo algo = Algo::automatic,
                                          const Budget& budget = {}) {
  require(degree >= 0 && degree <= X.dim(), errc::bad_parameters,
          "degree out of range");
  auto start = std::chrono::steady_clock::now();
  ExpansionReport rep;
  rep.complex_name = X.name();
  rep.degree = degree;
  rep.group_name = A.name();
  rep.variant = variant;
  Subgroup subgroup = variant == Variant::coboundary && degree > 0
                          ? Subgroup::coboundaries
                          : Subgroup::cocycles;
  rep.measured_against = subgroup;
  if (variant == Variant::coboundary && degree == 0) {
    rep.degree0_substitution = true;
    rep.flags.push_back(
        "degree0-coboundary-variant-measured-against-cocycles");
  }

  auto finish = [&](ExpansionReport& r) -> ExpansionReport& {
    r.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return r;
  };

  require(algo != Algo::branch_and_bound, errc::bad_parameters,
          "branch-and-bound computes single distances; the expansion "
          "constant needs full-table, the subset sweep, or sampled mode");

  int N = X.cells(degree);
  bool sweepable = subgroup == Subgroup::cocycles && degree == 0 &&
                   detail::degree0_sweep_applicable(X, A) &&
                   (std::uint64_t(1) << N) <= budget.node_limit;
  if (algo == Algo::automatic && sweepable) {
    auto sw = detail::degree0_sweep(X, A, budget);
    rep.algorithm = "degree0-sweep";
    rep.exact = true;
    rep.cochains_enumerated = sw.enumerated;
    rep.cosets_examined = sw.num_cosets;
    if (!sw.any_positive) {
      rep.lambda = std::nullopt;
      rep.flags.push_back("no-cochain-at-positive-distance");
    } else {
      rep.lambda = sw.lambda;
      Cochain w(X, 0, A);
      for (int v : sw.support) w.set(v, 1);
      rep.witness = std::move(w);
      rep.witness_dstar_norm = sw.num;
      rep.witness_distance = sw.den;
    }
    return finish(rep);
  }

  if (algo == Algo::sampled) {
    // certified upper bound: every tested ratio is exact, the minimum is
    // reported, but no claim is made that smaller ratios do not exist
    rep.algorithm = "sampled";
    rep.exact = false;
    rep.flags.push_back("upper-bound-only");
    detail::CosetKeyer keyer(X, degree, A, subgroup);
    // structured pass: all single-cell cochains; random pass: seeded draws
    std::vector<Cochain> pool;
    for (int cell = 0; cell < N && cell < 1024; ++cell)
      for (GroupElem v = 1; v < A.order(); ++v) {
        Cochain c(X, degree, A);
        c.set(cell, v);
        pool.push_back(std::move(c));
      }
    for (std::uint64_t s = 0; s < budget.samples; ++s) {
      Cochain c(X, degree, A);
      std::uint64_t sz = 1 + rng_below(rng_at(budget.seed, 2 * s),
                                       std::uint64_t(std::min(N, 6)));
      for (std::uint64_t t = 0; t < sz; ++t) {
        std::uint64_t draw = rng_at(budget.seed, 1000 + 8 * s + t);
        int cell = int(rng_below(draw, std::uint64_t(N)));
        GroupElem val = 1 + rng_below(draw >> 32, A.order() - 1);
        c.set(cell, val);
      }
      if (!c.is_zero()) pool.push_back(std::move(c));
    }
    std::optional<std::pair<Rational, Cochain>> best;
    std::size_t best_num = 0, best_den = 0;
    std::uint64_t tried = 0;
    for (auto& c : pool) {
      DistanceResult d;
      try {
        d = subgroup_distance(c, subgroup, Algo::automatic, 1, budget);
      } catch (const budget_error&) {
        rep.flags.push_back("some-samples-skipped-by-budget");
        continue;
      }
      ++tried;
      if (d.distance == 0) continue;
      auto dense = detail::to_dense(c);
      std::size_t num = keyer.dstar_norm(c.support(), dense);
      Rational ratio(std::int64_t(num), std::int64_t(d.distance));
      if (!best || ratio < best->first ||
          (ratio == best->first && detail::cochain_less(c, best->second))) {
        best = {ratio, c};
        best_num = num;
        best_den = d.distance;
      }
    }
    rep.cochains_enumerated = tried;
    if (best) {
      rep.lambda = best->first;
      rep.witness = best->second;
      rep.witness_dstar_norm = best_num;
      rep.witness_distance = best_den;
    } else {
      rep.lambda = std::nullopt;
      rep.flags.push_back("no-sample-at-positive-distance");
    }
    return finish(rep);
  }

  // full table
  detail::CosetKeyer keyer(X, degree, A, subgroup);
  std::uint64_t enumerated = 0;
  auto table =
      detail::build_leader_table(X, degree, A, keyer, budget, &enumerated);
  rep.algorithm = "full-table";
  rep.exact = true;
  rep.cochains_enumerated = enumerated;
  rep.cosets_examined = table.size();
  std::size_t maxw = 0;
  for (auto& [key, lead] : table) maxw = std::max(maxw, std::size_t(lead.weight));
  rep.leader_weight_histogram.assign(maxw + 1, 0);
  const detail::Leader* best = nullptr;
  for (auto& [key, lead] : table) {
    ++rep.leader_weight_histogram[lead.weight];
    if (lead.weight == 0) continue;
    if (!best) {
      best = &lead;
      continue;
    }
    __uint128_t lhs = __uint128_t(lead.dstar) * best->weight;
    __uint128_t rhs = __uint128_t(best->dstar) * lead.weight;
    if (lhs < rhs ||
        (lhs == rhs && detail::support_value_less(lead.support, lead.values,
                                                  best->support,
                                                  best->values)))
      best = &lead;
  }
  if (!best) {
    rep.lambda = std::nullopt;
    rep.flags.push_back("no-cochain-at-positive-distance");
    return finish(rep);
  }
  rep.lambda = Rational(std::int64_t(best->dstar), std::int64_t(best->weight));
  Cochain w(X, degree, A);
  for (std::size_t i = 0; i < best->support.size(); ++i)
    w.set(best->support[i], best->values[i]);
  rep.witness = std::move(w);
  rep.witness_dstar_norm = best->dstar;
  rep.witness_distance = best->weight;
  return finish(rep);
}

// ---- public: locality check -------------------------------------------

struct MinimizerLocality {
  Cochain z;
  bool component_ok = false;      // every component of supp z meets supp c
  bool neighbourhood_ok = false;  // supp z inside the distance-ball of supp c
  std::vector<int> offending;
};

struct LocalityReport {
  std::size_t distance = 0;
  bool holds = true;
  bool complete = true;  // all minimizers enumerated
  std::vector<MinimizerLocality> details;
};

inline LocalityReport locality_check(const Cochain& c, std::size_t cap = 4096,
                                     const Budget& budget = {}) {
  auto d = subgroup_distance(c, Subgroup::cocycles, Algo::automatic, cap,
                             budget);
  LocalityReport rep;
  rep.distance = d.distance;
  rep.complete = d.minimizers_complete;
  CellGraph graph = coboundary_graph(c.complex(), c.degree(), c.group());
  auto supp_c = c.support();
  auto ball = graph.ball(supp_c, std::int64_t(d.distance));
  for (auto& z : d.minimizers) {
    MinimizerLocality ml{z, true, true, {}};
    auto supp_z = z.support();
    for (auto& comp : graph.components_within(supp_z)) {
      bool meets = false;
      for (int cell : comp)
        if (c.value(cell)) {
          meets = true;
          break;
        }
      if (!meets && !supp_z.empty()) {
        ml.component_ok = false;
        ml.offending.insert(ml.offending.end(), comp.begin(), comp.end());
      }
    }
    for (int cell : supp_z)
      if (!std::binary_search(ball.begin(), ball.end(), cell)) {
        ml.neighbourhood_ok = false;
        ml.offending.push_back(cell);
      }
    if (!ml.component_ok || !ml.neighbourhood_ok) rep.holds = false;
    rep.details.push_back(std::move(ml));
  }
  return rep;
}

}  // namespace cobex
