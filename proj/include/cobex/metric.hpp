#pragma once
// Adjacency structure on the cells of one dimension. Two n-cells are
// neighbours when some common (n+1)-coface meets both with incidence
// coefficients that act nontrivially on the coefficient group; path
// length in that graph is the distance used for locality arguments. The
// chain-side variant uses shared faces instead of shared cofaces and
// supports the filling search the same way.

#include "cobex/complex.hpp"
#include "cobex/errors.hpp"
#include "cobex/group.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <vector>

namespace cobex {

class CellGraph {
 public:
  enum class Side { cofaces, faces };

  CellGraph(const CellComplex& X, int degree, const CoefficientGroup& A,
            Side side = Side::cofaces)
      : X_(&X), degree_(degree), group_(A), side_(side) {
    require(degree >= 0 && degree <= X.dim(), errc::bad_parameters,
            "degree out of range");
    int n = X.cells(degree);
    auto nb = std::vector<std::set<int>>(std::size_t(n));
    if (side == Side::cofaces) {
      if (degree < X.dim()) {
        for (int w = 0; w < X.cells(degree + 1); ++w)
          link_through(nb, X.faces(degree + 1, w));
      }
    } else {
      if (degree >= 1) {
        // shared faces: for each (degree-1)-cell, link its cofaces
        for (int f = 0; f < X.cells(degree - 1); ++f)
          link_through(nb, X.cofaces(degree - 1, f));
      }
    }
    adj_.resize(std::size_t(n));
    for (int c = 0; c < n; ++c)
      adj_[std::size_t(c)].assign(nb[std::size_t(c)].begin(),
                                  nb[std::size_t(c)].end());
  }

  const CellComplex& complex() const { return *X_; }
  int degree() const { return degree_; }
  const CoefficientGroup& group() const { return group_; }
  int num_cells() const { return int(adj_.size()); }
  const std::vector<int>& neighbours(int cell) const {
    return adj_[std::size_t(cell)];
  }

  // path distance; empty when the cells lie in different components
  std::optional<int> distance(int from, int to) const {
    X_->check_cell(degree_, from);
    X_->check_cell(degree_, to);
    if (from == to) return 0;
    std::vector<int> dist(adj_.size(), -1);
    std::deque<int> work{from};
    dist[std::size_t(from)] = 0;
    while (!work.empty()) {
      int c = work.front();
      work.pop_front();
      for (int nb : adj_[std::size_t(c)])
        if (dist[std::size_t(nb)] < 0) {
          dist[std::size_t(nb)] = dist[std::size_t(c)] + 1;
          if (nb == to) return dist[std::size_t(nb)];
          work.push_back(nb);
        }
    }
    return std::nullopt;
  }

  // connected components of the subgraph induced on `cells`
  std::vector<std::vector<int>> components_within(
      const std::vector<int>& cells) const {
    std::set<int> inside(cells.begin(), cells.end());
    for (int c : cells) X_->check_cell(degree_, c);
    std::vector<std::vector<int>> out;
    std::set<int> seen;
    for (int start : cells) {
      if (seen.count(start)) continue;
      std::vector<int> comp;
      std::deque<int> work{start};
      seen.insert(start);
      while (!work.empty()) {
        int c = work.front();
        work.pop_front();
        comp.push_back(c);
        for (int nb : adj_[std::size_t(c)])
          if (inside.count(nb) && !seen.count(nb)) {
            seen.insert(nb);
            work.push_back(nb);
          }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  // components of the whole graph, each sorted, ordered by least cell
  std::vector<std::vector<int>> components() const {
    std::vector<int> all(adj_.size());
    for (std::size_t i = 0; i < adj_.size(); ++i) all[i] = int(i);
    return components_within(all);
  }

  // all cells within distance <= radius of the seed set, sorted
  std::vector<int> ball(const std::vector<int>& seeds,
                        std::int64_t radius) const {
    std::vector<int> dist(adj_.size(), -1);
    std::deque<int> work;
    for (int s : seeds) {
      X_->check_cell(degree_, s);
      if (dist[std::size_t(s)] < 0) {
        dist[std::size_t(s)] = 0;
        work.push_back(s);
      }
    }
    std::vector<int> out;
    while (!work.empty()) {
      int c = work.front();
      work.pop_front();
      out.push_back(c);
      if (dist[std::size_t(c)] >= radius) continue;
      for (int nb : adj_[std::size_t(c)])
        if (dist[std::size_t(nb)] < 0) {
          dist[std::size_t(nb)] = dist[std::size_t(c)] + 1;
          work.push_back(nb);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // largest finite pairwise distance within each component; empty when
  // there are no cells
  std::optional<int> diameter() const {
    int best = -1;
    for (int c = 0; c < num_cells(); ++c) {
      std::vector<int> dist(adj_.size(), -1);
      std::deque<int> work{c};
      dist[std::size_t(c)] = 0;
      while (!work.empty()) {
        int u = work.front();
        work.pop_front();
        best = std::max(best, dist[std::size_t(u)]);
        for (int nb : adj_[std::size_t(u)])
          if (dist[std::size_t(nb)] < 0) {
            dist[std::size_t(nb)] = dist[std::size_t(u)] + 1;
            work.push_back(nb);
          }
      }
    }
    if (best < 0) return std::nullopt;
    return best;
  }

  // edge list (unordered pairs, each once, lexicographic)
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int c = 0; c < num_cells(); ++c)
      for (int nb : adj_[std::size_t(c)])
        if (c < nb) out.emplace_back(c, nb);
    return out;
  }

 private:
  void link_through(std::vector<std::set<int>>& nb, const FaceList& entries) {
    std::vector<int> active;
    for (auto& [cell, coeff] : entries)
      if (!group_.annihilates(coeff)) active.push_back(cell);
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        if (active[i] == active[j]) continue;
        nb[std::size_t(active[i])].insert(active[j]);
        nb[std::size_t(active[j])].insert(active[i]);
      }
  }

  const CellComplex* X_;
  int degree_;
  CoefficientGroup group_;
  Side side_;
  std::vector<std::vector<int>> adj_;
};

inline CellGraph coboundary_graph(const CellComplex& X, int degree,
                                  const CoefficientGroup& A) {
  return CellGraph(X, degree, A, CellGraph::Side::cofaces);
}

inline CellGraph face_graph(const CellComplex& X, int degree,
                            const CoefficientGroup& A) {
  return CellGraph(X, degree, A, CellGraph::Side::faces);
}

}  // namespace cobex
