#pragma once
// Finite cell complexes with integer incidence numbers. Cells of each
// dimension are dense indices 0..count-1; a k-cell stores its (k-1)-faces
// with signed coefficients. Construction validates the structure once
// (face indices in range, boundary-of-boundary vanishing over the
// integers) and precomputes coface lists; instances are immutable after
// that, so everything downstream can share them by pointer.

#include "cobex/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cobex {

using FaceEntry = std::pair<int, std::int64_t>;  // (face index, coefficient)
using FaceList = std::vector<FaceEntry>;

class CellComplex {
 public:
  CellComplex(std::string name, int dim, std::vector<int> counts,
              std::vector<std::vector<FaceList>> incidence,
              std::vector<std::vector<std::string>> labels = {})
      : name_(std::move(name)),
        dim_(dim),
        counts_(std::move(counts)),
        incidence_(std::move(incidence)),
        labels_(std::move(labels)),
        instance_id_(next_instance_id()) {
    validate();
    build_cofaces();
    recover_vertex_sets();
  }

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  std::uint64_t instance_id() const { return instance_id_; }

  int cells(int k) const {
    return (k < 0 || k > dim_) ? 0 : counts_[std::size_t(k)];
  }

  // faces of a k-cell, k >= 1; sorted by face index, coefficients nonzero
  const FaceList& faces(int k, int cell) const {
    check_cell(k, cell);
    return incidence_[std::size_t(k)][std::size_t(cell)];
  }

  // cofaces of a k-cell, k < dim: (coface index, coefficient of this cell)
  const FaceList& cofaces(int k, int cell) const {
    check_cell(k, cell);
    return cofaces_[std::size_t(k)][std::size_t(cell)];
  }

  // signed coefficient of face in the boundary of (k)-cell, 0 if absent
  std::int64_t coefficient(int k, int cell, int face) const {
    for (auto& [f, c] : faces(k, cell))
      if (f == face) return c;
    return 0;
  }

  // sorted vertex indices of a cell, nonempty exactly when every chain of
  // faces below the cell reaches dimension 0 with simplex-like counts;
  // empty means the cell is not simplicial (e.g. polygonal 2-cells)
  const std::vector<int>& vertex_set(int k, int cell) const {
    check_cell(k, cell);
    return vertex_sets_[std::size_t(k)][std::size_t(cell)];
  }

  bool is_simplicial() const { return simplicial_; }

  const std::string& label(int k, int cell) const {
    static const std::string empty;
    if (std::size_t(k) >= labels_.size()) return empty;
    if (std::size_t(cell) >= labels_[std::size_t(k)].size()) return empty;
    return labels_[std::size_t(k)][std::size_t(cell)];
  }

  void check_cell(int k, int cell) const {
    require(k >= 0 && k <= dim_, errc::unknown_cell,
            "no cells of dimension " + std::to_string(k) + " in '" + name_ +
                "'");
    require(cell >= 0 && cell < counts_[std::size_t(k)], errc::unknown_cell,
            "cell " + std::to_string(cell) + " of dimension " +
                std::to_string(k) + " out of range in '" + name_ + "'");
  }

 private:
  static std::uint64_t next_instance_id() {
    static std::uint64_t counter = 0;
    return ++counter;
  }

  void validate() {
    require(dim_ >= 0, errc::bad_parameters, "dimension must be nonnegative");
    require(counts_.size() == std::size_t(dim_) + 1, errc::bad_parameters,
            "cell count vector must have dim+1 entries");
    for (auto c : counts_)
      require(c >= 0, errc::bad_parameters, "negative cell count");
    require(incidence_.size() == std::size_t(dim_) + 1, errc::bad_parameters,
            "incidence table must have dim+1 levels");
    require(incidence_[0].empty() || counts_[0] == 0 ||
                incidence_[0].size() == std::size_t(counts_[0]),
            errc::bad_parameters, "vertices carry no incidence");
    for (auto& row : incidence_[0])
      require(row.empty(), errc::bad_parameters,
              "vertices cannot have faces");
    incidence_[0].assign(std::size_t(counts_[0]), {});

    if (!labels_.empty()) {
      require(labels_.size() == std::size_t(dim_) + 1, errc::bad_parameters,
              "label table must have dim+1 levels when present");
      for (int k = 0; k <= dim_; ++k) {
        auto& lv = labels_[std::size_t(k)];
        if (lv.empty()) continue;
        require(lv.size() == std::size_t(counts_[std::size_t(k)]),
                errc::bad_parameters, "label count mismatch");
        std::set<std::string> seen;
        for (auto& l : lv)
          require(seen.insert(l).second, errc::duplicate_id,
                  "cell label '" + l + "' repeats in dimension " +
                      std::to_string(k));
      }
    }

    for (int k = 1; k <= dim_; ++k) {
      auto& level = incidence_[std::size_t(k)];
      require(level.size() == std::size_t(counts_[std::size_t(k)]),
              errc::bad_parameters,
              "incidence rows for dimension " + std::to_string(k) +
                  " do not match the cell count");
      for (int cell = 0; cell < counts_[std::size_t(k)]; ++cell) {
        auto& fl = level[std::size_t(cell)];
        // canonical order, merged coefficients, zeros dropped
        std::map<int, std::int64_t> merged;
        for (auto& [f, c] : fl) {
          require(f >= 0 && f < counts_[std::size_t(k - 1)],
                  errc::dangling_face,
                  "cell " + std::to_string(cell) + " of dimension " +
                      std::to_string(k) + " references missing face " +
                      std::to_string(f));
          merged[f] += c;
        }
        fl.clear();
        for (auto& [f, c] : merged)
          if (c != 0) fl.emplace_back(f, c);
      }
    }

    // boundary-of-boundary must vanish over the integers
    for (int k = 2; k <= dim_; ++k) {
      for (int cell = 0; cell < counts_[std::size_t(k)]; ++cell) {
        std::map<int, std::int64_t> second;
        for (auto& [f, c] : incidence_[std::size_t(k)][std::size_t(cell)])
          for (auto& [g, d] : incidence_[std::size_t(k - 1)][std::size_t(f)])
            second[g] += c * d;
        for (auto& [g, total] : second)
          require(total == 0, errc::boundary_not_square_zero,
                  "boundary of boundary of cell " + std::to_string(cell) +
                      " (dimension " + std::to_string(k) +
                      ") is nonzero on cell " + std::to_string(g) +
                      " (dimension " + std::to_string(k - 2) + ")");
      }
    }
  }

  void build_cofaces() {
    cofaces_.assign(std::size_t(dim_) + 1, {});
    for (int k = 0; k <= dim_; ++k)
      cofaces_[std::size_t(k)].assign(std::size_t(counts_[std::size_t(k)]),
                                      {});
    for (int k = 1; k <= dim_; ++k)
      for (int cell = 0; cell < counts_[std::size_t(k)]; ++cell)
        for (auto& [f, c] : incidence_[std::size_t(k)][std::size_t(cell)])
          cofaces_[std::size_t(k - 1)][std::size_t(f)].emplace_back(cell, c);
  }

  void recover_vertex_sets() {
    vertex_sets_.assign(std::size_t(dim_) + 1, {});
    for (int k = 0; k <= dim_; ++k)
      vertex_sets_[std::size_t(k)].assign(
          std::size_t(counts_[std::size_t(k)]), {});
    for (int v = 0; v < counts_[0]; ++v) vertex_sets_[0][std::size_t(v)] = {v};
    simplicial_ = true;
    for (int k = 1; k <= dim_; ++k) {
      for (int cell = 0; cell < counts_[std::size_t(k)]; ++cell) {
        std::set<int> verts;
        bool ok = true;
        auto& fl = incidence_[std::size_t(k)][std::size_t(cell)];
        for (auto& [f, c] : fl) {
          auto& fv = vertex_sets_[std::size_t(k - 1)][std::size_t(f)];
          if (fv.empty()) {
            ok = false;
            break;
          }
          verts.insert(fv.begin(), fv.end());
        }
        // a k-simplex has k+1 vertices and k+1 facets with unit
        // coefficients whose vertex sets are the distinct k-subsets
        if (ok && verts.size() == std::size_t(k) + 1 &&
            fl.size() == std::size_t(k) + 1) {
          bool units = true;
          std::set<std::vector<int>> facet_sets;
          for (auto& [f, c] : fl) {
            if (c != 1 && c != -1) units = false;
            auto& fv = vertex_sets_[std::size_t(k - 1)][std::size_t(f)];
            if (fv.size() != std::size_t(k) || !facet_sets.insert(fv).second)
              units = false;
          }
          if (units) {
            vertex_sets_[std::size_t(k)][std::size_t(cell)]
                .assign(verts.begin(), verts.end());
            continue;
          }
        }
        simplicial_ = false;
      }
    }
  }

  std::string name_;
  int dim_;
  std::vector<int> counts_;
  std::vector<std::vector<FaceList>> incidence_;
  std::vector<std::vector<FaceList>> cofaces_;
  std::vector<std::vector<std::vector<int>>> vertex_sets_;
  std::vector<std::vector<std::string>> labels_;
  bool simplicial_ = false;
  std::uint64_t instance_id_;
};

inline void require_same_complex(const CellComplex& a, const CellComplex& b,
                                 const std::string& context) {
  require(a.instance_id() == b.instance_id(), errc::complex_mismatch,
          context + ": cochains live on different complexes ('" + a.name() +
              "' vs '" + b.name() + "')");
}

// Disjoint union; cell ids of `b` are shifted past those of `a`.
inline CellComplex disjoint_union(const CellComplex& a, const CellComplex& b,
                                  const std::string& name = "") {
  int dim = std::max(a.dim(), b.dim());
  std::vector<int> counts(std::size_t(dim) + 1, 0);
  std::vector<std::vector<FaceList>> inc(std::size_t(dim) + 1);
  for (int k = 0; k <= dim; ++k) {
    counts[std::size_t(k)] = a.cells(k) + b.cells(k);
    inc[std::size_t(k)].resize(std::size_t(counts[std::size_t(k)]));
    if (k == 0) continue;
    for (int c = 0; c < a.cells(k); ++c)
      inc[std::size_t(k)][std::size_t(c)] = a.faces(k, c);
    for (int c = 0; c < b.cells(k); ++c) {
      FaceList fl = b.faces(k, c);
      for (auto& [f, coeff] : fl) f += a.cells(k - 1);
      inc[std::size_t(k)][std::size_t(a.cells(k) + c)] = std::move(fl);
    }
  }
  return CellComplex(name.empty() ? a.name() + "+" + b.name() : name, dim,
                     std::move(counts), std::move(inc));
}

// The complex with all arrows reversed: k-cells of the result are the
// (dim-k)-cells of X, and faces become cofaces with the same coefficients.
// Boundary-squared vanishes because transposing preserves it. This turns
// chain problems (boundaries, fillings) into cochain problems and is the
// combinatorial skeleton of the dual complex of a closed manifold.
inline CellComplex transpose_complex(const CellComplex& X,
                                     const std::string& name = "") {
  int dim = X.dim();
  std::vector<int> counts(std::size_t(dim) + 1, 0);
  std::vector<std::vector<FaceList>> inc(std::size_t(dim) + 1);
  for (int k = 0; k <= dim; ++k) {
    counts[std::size_t(k)] = X.cells(dim - k);
    inc[std::size_t(k)].resize(std::size_t(counts[std::size_t(k)]));
    if (k == 0) continue;
    for (int c = 0; c < X.cells(dim - k); ++c)
      inc[std::size_t(k)][std::size_t(c)] = X.cofaces(dim - k, c);
  }
  return CellComplex(name.empty() ? "transpose(" + X.name() + ")" : name, dim,
                     std::move(counts), std::move(inc));
}

}  // namespace cobex
