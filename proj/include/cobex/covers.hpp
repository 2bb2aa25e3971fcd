#pragma once
// Finite covers from monodromy data. A cover is described by a spanning
// tree of the base 1-skeleton plus a fiber permutation on every non-tree
// edge; tree edges carry the identity. Lifts are numbered so that cell
// (b, sheet) gets id b*fiber + sheet, which makes projection a plain
// division and cover construction fully deterministic. The sheet of a
// lifted cell is the sheet of its basepoint: a vertex is its own
// basepoint, an edge's basepoint is its tail, and a higher cell's
// basepoint is its least vertex.

#include "cobex/cochain.hpp"
#include "cobex/complex.hpp"
#include "cobex/errors.hpp"
#include "cobex/expansion.hpp"
#include "cobex/generators.hpp"
#include "cobex/json_io.hpp"
#include "cobex/metric.hpp"
#include "cobex/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cobex {

struct MonodromySpec {
  const CellComplex* base = nullptr;
  int fiber = 1;
  std::vector<int> tree_edges;
  std::map<int, std::vector<int>> perms;  // non-tree edge -> image table
};

// total cell ids are base_id * fiber + sheet
struct CoveringMap {
  std::shared_ptr<const CellComplex> total;
  const CellComplex* base = nullptr;
  int fiber = 1;

  int project(int cell) const { return cell / fiber; }
  int sheet(int cell) const { return cell % fiber; }
};

// a composed projection from one complex onto another, still of the
// id-division form
struct Projection {
  const CellComplex* total = nullptr;
  const CellComplex* base = nullptr;
  int fiber = 1;

  int project(int cell) const { return cell / fiber; }
};

namespace detail {

// (tail, head) of an oriented edge: exactly one -1 and one +1 vertex
inline std::pair<int, int> oriented_edge(const CellComplex& X, int e) {
  int tail = -1, head = -1;
  for (auto& [v, coeff] : X.faces(1, e)) {
    if (coeff == -1 && tail < 0)
      tail = v;
    else if (coeff == 1 && head < 0)
      head = v;
    else
      fail(errc::bad_parameters,
           "cover construction needs oriented edges (one -1 and one +1 "
           "endpoint); edge " +
               std::to_string(e) + " of '" + X.name() + "' is not");
  }
  require(tail >= 0 && head >= 0, errc::bad_parameters,
          "cover construction needs oriented edges; edge " +
              std::to_string(e) + " of '" + X.name() + "' is degenerate");
  return {tail, head};
}

struct WalkStep {
  int edge;
  bool forward;
};

// The attaching walk of a 2-cell: a single closed walk traversing each
// boundary edge once, in the direction given by its incidence sign.
// Start at the least incident vertex; at each vertex follow the unused
// departure with the least (edge, direction) so the walk is canonical.
inline std::vector<WalkStep> boundary_walk(const CellComplex& X, int cell) {
  struct Dart {
    int edge;
    bool forward;
    int to;
    bool used = false;
  };
  std::map<int, std::vector<Dart>> out;  // from-vertex -> departures
  int nsteps = 0;
  int start = -1;
  for (auto& [e, coeff] : X.faces(2, cell)) {
    require(coeff == 1 || coeff == -1, errc::bad_parameters,
            "2-cell " + std::to_string(cell) +
                " has a non-unit incidence coefficient; covers of such "
                "cells are not supported");
    auto [tail, head] = oriented_edge(X, e);
    if (coeff == 1)
      out[tail].push_back({e, true, head});
    else
      out[head].push_back({e, false, tail});
    ++nsteps;
    start = start < 0 ? std::min(tail, head) : std::min({start, tail, head});
  }
  for (auto& [v, darts] : out)
    std::sort(darts.begin(), darts.end(), [](const Dart& a, const Dart& b) {
      return std::pair(a.edge, !a.forward) < std::pair(b.edge, !b.forward);
    });
  std::vector<WalkStep> walk;
  int at = start;
  for (int step = 0; step < nsteps; ++step) {
    Dart* next = nullptr;
    for (auto& d : out[at])
      if (!d.used) {
        next = &d;
        break;
      }
    require(next != nullptr, errc::bad_parameters,
            "2-cell " + std::to_string(cell) +
                " boundary is not a single closed walk");
    next->used = true;
    walk.push_back({next->edge, next->forward});
    at = next->to;
  }
  require(at == start, errc::bad_parameters,
          "2-cell " + std::to_string(cell) + " boundary walk does not close");
  return walk;
}

inline std::vector<int> inverse_perm(const std::vector<int>& p) {
  std::vector<int> inv(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) inv[std::size_t(p[i])] = int(i);
  return inv;
}

// per-edge permutation tables (identity on tree edges), plus inverses
struct EdgeAction {
  std::vector<std::vector<int>> fwd;  // [edge][sheet]
  std::vector<std::vector<int>> inv;

  int apply(int edge, bool forward, int sheet) const {
    return forward ? fwd[std::size_t(edge)][std::size_t(sheet)]
                   : inv[std::size_t(edge)][std::size_t(sheet)];
  }
};

inline EdgeAction edge_action(const MonodromySpec& spec) {
  const CellComplex& X = *spec.base;
  auto identity = std::vector<int>(std::size_t(spec.fiber));
  std::iota(identity.begin(), identity.end(), 0);
  EdgeAction act;
  act.fwd.assign(std::size_t(X.cells(1)), identity);
  for (auto& [e, p] : spec.perms) act.fwd[std::size_t(e)] = p;
  act.inv.reserve(act.fwd.size());
  for (auto& p : act.fwd) act.inv.push_back(inverse_perm(p));
  return act;
}

}  // namespace detail

inline void validate_monodromy(const MonodromySpec& spec) {
  require(spec.base != nullptr, errc::bad_parameters, "monodromy needs a base");
  const CellComplex& X = *spec.base;
  require(spec.fiber >= 1, errc::bad_parameters, "fiber size must be >= 1");
  require(X.dim() >= 1 && X.cells(0) >= 1, errc::bad_parameters,
          "base must have vertices and edges");
  int nv = X.cells(0), ne = X.cells(1);

  // connectivity of the 1-skeleton
  auto uf = std::vector<int>(std::size_t(nv));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int v) {
    while (uf[std::size_t(v)] != v) v = uf[std::size_t(v)] = uf[std::size_t(uf[std::size_t(v)])];
    return v;
  };
  for (int e = 0; e < ne; ++e) {
    auto [t, h] = detail::oriented_edge(X, e);
    uf[std::size_t(find(t))] = find(h);
  }
  for (int v = 0; v < nv; ++v)
    require(find(v) == find(0), errc::disconnected,
            "base 1-skeleton of '" + X.name() + "' is disconnected");

  // spanning tree: nv-1 distinct edges forming no cycle
  std::iota(uf.begin(), uf.end(), 0);
  std::set<int> tree(spec.tree_edges.begin(), spec.tree_edges.end());
  require(tree.size() == spec.tree_edges.size(), errc::not_spanning_tree,
          "duplicate tree edges");
  require(int(tree.size()) == nv - 1, errc::not_spanning_tree,
          "spanning tree needs exactly " + std::to_string(nv - 1) +
              " edges, got " + std::to_string(tree.size()));
  for (int e : tree) {
    require(e >= 0 && e < ne, errc::unknown_cell,
            "tree edge " + std::to_string(e) + " out of range");
    auto [t, h] = detail::oriented_edge(X, e);
    require(find(t) != find(h), errc::not_spanning_tree,
            "tree edges contain a cycle through edge " + std::to_string(e));
    uf[std::size_t(find(t))] = find(h);
  }

  // permutations on non-tree edges only
  for (auto& [e, p] : spec.perms) {
    require(e >= 0 && e < ne, errc::unknown_cell,
            "permutation on unknown edge " + std::to_string(e));
    require(!tree.count(e), errc::bad_parameters,
            "edge " + std::to_string(e) +
                " is a tree edge; tree edges carry the identity");
    require(int(p.size()) == spec.fiber, errc::bad_parameters,
            "permutation on edge " + std::to_string(e) + " has size " +
                std::to_string(p.size()) + ", fiber is " +
                std::to_string(spec.fiber));
    std::vector<bool> seen(std::size_t(spec.fiber), false);
    for (int v : p) {
      require(v >= 0 && v < spec.fiber && !seen[std::size_t(v)],
              errc::bad_parameters,
              "table on edge " + std::to_string(e) + " is not a permutation");
      seen[std::size_t(v)] = true;
    }
  }

  // every 2-cell's boundary word must act trivially on the fiber
  if (X.dim() >= 2) {
    auto act = detail::edge_action(spec);
    for (int f = 0; f < X.cells(2); ++f) {
      auto walk = detail::boundary_walk(X, f);
      for (int s = 0; s < spec.fiber; ++s) {
        int t = s;
        for (auto& step : walk) t = act.apply(step.edge, step.forward, t);
        require(t == s, errc::relator_not_trivial,
                "boundary word of 2-cell " + std::to_string(f) +
                    " moves sheet " + std::to_string(s) + " to " +
                    std::to_string(t));
      }
    }
  }
}

inline CoveringMap build_cover(const MonodromySpec& spec,
                               const std::string& name = "") {
  validate_monodromy(spec);
  const CellComplex& X = *spec.base;
  int F = spec.fiber;
  auto act = detail::edge_action(spec);

  int dim = X.dim();
  std::vector<int> counts(std::size_t(dim) + 1, 0);
  std::vector<std::vector<FaceList>> inc(std::size_t(dim) + 1);
  for (int k = 0; k <= dim; ++k) {
    counts[std::size_t(k)] = X.cells(k) * F;
    inc[std::size_t(k)].resize(std::size_t(counts[std::size_t(k)]));
  }

  // edges: tail keeps the lift's sheet, head moves by the edge action
  for (int e = 0; e < X.cells(1); ++e) {
    auto [tail, head] = detail::oriented_edge(X, e);
    for (int s = 0; s < F; ++s)
      inc[1][std::size_t(e * F + s)] = {
          {tail * F + s, -1}, {head * F + act.apply(e, true, s), 1}};
  }

  // the sheet of every vertex of a cell, transported from the basepoint;
  // needed by all cells of dimension >= 2
  std::map<std::pair<int, int>, std::pair<int, bool>> edge_by_pair;
  if (dim >= 3) {
    for (int e = 0; e < X.cells(1); ++e) {
      auto [t, h] = detail::oriented_edge(X, e);
      auto key = std::minmax(t, h);
      require(!edge_by_pair.count(key), errc::bad_parameters,
              "parallel edges prevent lifting cells of dimension >= 3");
      edge_by_pair[key] = {e, t < h};  // bool: edge runs min -> max
    }
  }

  // 2-cells: replay the canonical attaching walk on each sheet
  if (dim >= 2) {
    for (int f = 0; f < X.cells(2); ++f) {
      auto walk = detail::boundary_walk(X, f);
      for (int s = 0; s < F; ++s) {
        FaceList faces;
        int t = s;
        for (auto& step : walk) {
          if (step.forward) {
            faces.push_back({step.edge * F + t, 1});
            t = act.apply(step.edge, true, t);
          } else {
            t = act.apply(step.edge, false, t);
            faces.push_back({step.edge * F + t, -1});
          }
        }
        require(t == s, errc::relator_not_trivial,
                "walk of 2-cell " + std::to_string(f) + " failed to close");
        inc[2][std::size_t(f * F + s)] = std::move(faces);
      }
    }
  }

  // higher simplicial cells: transport sheets to every vertex along
  // in-cell edges (path-independent once all 2-cell relators are trivial),
  // then reference each face's lift through the face's own basepoint
  for (int k = 3; k <= dim; ++k) {
    for (int c = 0; c < X.cells(k); ++c) {
      auto verts = X.vertex_set(k, c);
      require(int(verts.size()) == k + 1, errc::bad_parameters,
              "cells of dimension >= 3 must be simplicial to lift; cell " +
                  std::to_string(c) + " of dimension " + std::to_string(k) +
                  " is not");
      auto transport = [&](int u, int v, int sheet) {
        auto it = edge_by_pair.find(std::minmax(u, v));
        require(it != edge_by_pair.end(), errc::bad_parameters,
                "missing edge between simplex vertices");
        auto [e, min_to_max] = it->second;
        bool forward = min_to_max == (u < v);
        return act.apply(e, forward, sheet);
      };
      for (int s = 0; s < F; ++s) {
        std::map<int, int> sheet_of;  // vertex -> sheet for this lift
        sheet_of[verts[0]] = s;
        for (std::size_t i = 1; i < verts.size(); ++i)
          sheet_of[verts[std::size_t(i)]] = transport(verts[0], verts[std::size_t(i)], s);
        // consistency across every in-cell edge
        for (std::size_t i = 0; i < verts.size(); ++i)
          for (std::size_t j = i + 1; j < verts.size(); ++j) {
            int u = verts[i], v = verts[j];
            require(transport(u, v, sheet_of[u]) == sheet_of[v],
                    errc::bad_parameters,
                    "boundary of cell " + std::to_string(c) +
                        " (dimension " + std::to_string(k) +
                        ") does not lift consistently");
          }
        FaceList faces;
        for (auto& [fc, coeff] : X.faces(k, c)) {
          int base_sheet;
          if (k - 1 == 1) {
            auto [t, h] = detail::oriented_edge(X, fc);
            base_sheet = sheet_of.at(t);
          } else {
            base_sheet = sheet_of.at(X.vertex_set(k - 1, fc).front());
          }
          faces.push_back({fc * F + base_sheet, coeff});
        }
        inc[std::size_t(k)][std::size_t(c * F + s)] = std::move(faces);
      }
    }
  }

  auto total = std::make_shared<CellComplex>(
      name.empty() ? X.name() + "~" + std::to_string(F) : name, dim,
      std::move(counts), std::move(inc));

  // covering regularity: projection commutes with incidence, exactly
  // `fiber` preimages per base cell (the latter holds by numbering; the
  // former is the real check on the lift tables)
  for (int k = 1; k <= dim; ++k)
    for (int c = 0; c < total->cells(k); ++c) {
      std::vector<std::pair<int, std::int64_t>> up, down;
      for (auto& [fc, coeff] : total->faces(k, c)) up.push_back({fc / F, coeff});
      for (auto& [fc, coeff] : X.faces(k, c / F)) down.push_back({fc, coeff});
      std::sort(up.begin(), up.end());
      std::sort(down.begin(), down.end());
      require(up == down, errc::complex_mismatch,
              "cover lift of cell " + std::to_string(c / F) + " (dimension " +
                  std::to_string(k) + ") does not commute with incidence");
    }

  return CoveringMap{std::move(total), &X, F};
}

// ---- towers ------------------------------------------------------------

// levels[0] is the base; each later level covers the previous one
struct Tower {
  std::vector<std::shared_ptr<const CellComplex>> levels;
  std::vector<int> fibers;  // fibers[i]: levels[i+1] -> levels[i]

  int depth() const { return int(levels.size()); }
  const CellComplex& deepest() const { return *levels.back(); }

  // sheets of the deepest level over level i
  int composed_fiber(int i) const {
    int f = 1;
    for (std::size_t j = std::size_t(i); j < fibers.size(); ++j) f *= fibers[j];
    return f;
  }

  Projection projection(int i) const {
    return Projection{levels.back().get(), levels[std::size_t(i)].get(),
                      composed_fiber(i)};
  }
};

inline Tower make_tower(std::shared_ptr<const CellComplex> base) {
  Tower t;
  t.levels.push_back(std::move(base));
  return t;
}

inline void extend_tower(Tower& tower, const MonodromySpec& spec) {
  require(spec.base == tower.levels.back().get(), errc::complex_mismatch,
          "monodromy base is not the tower's deepest level");
  auto cover = build_cover(spec);
  tower.levels.push_back(cover.total);
  tower.fibers.push_back(cover.fiber);
}

// cyclic cover of a cycle-shaped level: drop the highest-id edge from the
// tree and send it to the +1 shift
inline MonodromySpec cyclic_cycle_spec(const CellComplex& level, int fiber) {
  MonodromySpec spec;
  spec.base = &level;
  spec.fiber = fiber;
  int ne = level.cells(1);
  for (int e = 0; e + 1 < ne; ++e) spec.tree_edges.push_back(e);
  auto shift = std::vector<int>(std::size_t(fiber));
  for (int s = 0; s < fiber; ++s) shift[std::size_t(s)] = (s + 1) % fiber;
  spec.perms[ne - 1] = shift;
  return spec;
}

inline Tower cycle_tower(int base_m, const std::vector<int>& fibers) {
  Tower t = make_tower(std::make_shared<CellComplex>(gen_cycle(base_m)));
  for (int f : fibers)
    extend_tower(t, cyclic_cycle_spec(*t.levels.back(), f));
  return t;
}

// ---- gauge-fixed shift covers of the 7-vertex torus ---------------------

namespace detail {

// Monodromy sending each edge to a coordinatewise shift of Z_k x ... with
// the given per-edge weight vectors, gauge-fixed so a BFS spanning tree
// carries the identity. Weights must already satisfy all 2-cell relators
// (signed sum zero around every attaching walk).
inline MonodromySpec shift_monodromy(
    const CellComplex& X, const std::vector<int>& moduli,
    const std::vector<std::vector<int>>& edge_weight) {
  int nv = X.cells(0), ne = X.cells(1);
  std::size_t D = moduli.size();
  int fiber = 1;
  for (int m : moduli) fiber *= m;

  // BFS spanning tree from vertex 0, scanning edges in id order
  auto at = std::vector<std::vector<std::pair<int, int>>>(std::size_t(nv));
  for (int e = 0; e < ne; ++e) {
    auto [t, h] = oriented_edge(X, e);
    at[std::size_t(t)].push_back({e, h});
    at[std::size_t(h)].push_back({e, t});
  }
  for (auto& v : at) std::sort(v.begin(), v.end());
  std::vector<std::vector<int>> phi(std::size_t(nv),
                                    std::vector<int>(D, -1));
  std::vector<int> tree;
  phi[0].assign(D, 0);
  std::vector<int> queue = {0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (auto& [e, v] : at[std::size_t(u)]) {
      if (phi[std::size_t(v)][0] >= 0) continue;
      auto [tail, head] = oriented_edge(X, e);
      // want gauge-fixed weight w + phi(head) - phi(tail) = 0 on the tree
      for (std::size_t d = 0; d < D; ++d) {
        int m = moduli[d];
        int w = edge_weight[std::size_t(e)][d];
        int pv = u == tail
                     ? (phi[std::size_t(u)][d] - w) % m
                     : (phi[std::size_t(u)][d] + w) % m;
        phi[std::size_t(v)][d] = ((pv % m) + m) % m;
      }
      tree.push_back(e);
      queue.push_back(v);
    }
  }
  require(int(queue.size()) == nv, errc::disconnected,
          "base 1-skeleton is disconnected");
  std::sort(tree.begin(), tree.end());

  MonodromySpec spec;
  spec.base = &X;
  spec.fiber = fiber;
  spec.tree_edges = tree;
  std::set<int> in_tree(tree.begin(), tree.end());
  for (int e = 0; e < ne; ++e) {
    if (in_tree.count(e)) continue;
    auto [tail, head] = oriented_edge(X, e);
    std::vector<int> shift(D);
    for (std::size_t d = 0; d < D; ++d) {
      int m = moduli[d];
      int w = edge_weight[std::size_t(e)][d] + phi[std::size_t(head)][d] -
              phi[std::size_t(tail)][d];
      shift[d] = ((w % m) + m) % m;
    }
    // mixed-radix coordinatewise shift as one permutation of the fiber
    auto perm = std::vector<int>(std::size_t(fiber));
    for (int s = 0; s < fiber; ++s) {
      int rem = s, img = 0, scale = 1;
      for (std::size_t d = D; d-- > 0;) {
        // decode digit d (least significant last in the mixed radix)
        int m = moduli[d];
        int digit = rem % m;
        rem /= m;
        img += ((digit + shift[d]) % m) * scale;
        scale *= m;
      }
      perm[std::size_t(s)] = img;
    }
    spec.perms[e] = perm;
  }
  return spec;
}

// the three difference classes of the 7-vertex torus, by edge slope:
// an edge a < b has slope b - a in {1..6}; classes d and 7-d are the same
// undirected class traversed in opposite cyclic directions
inline std::vector<std::vector<int>> torus7_weights(
    const CellComplex& X, const std::vector<std::vector<int>>& w123,
    std::size_t D, const std::vector<int>& moduli) {
  std::vector<std::vector<int>> weight(std::size_t(X.cells(1)));
  for (int e = 0; e < X.cells(1); ++e) {
    auto [a, b] = oriented_edge(X, e);
    int slope = b - a;  // a < b by generator construction
    std::vector<int> w(D);
    for (std::size_t d = 0; d < D; ++d) {
      int m = moduli[d];
      int v = slope <= 3 ? w123[std::size_t(slope - 1)][d]
                         : -w123[std::size_t(7 - slope - 1)][d];
      w[d] = ((v % m) + m) % m;
    }
    weight[std::size_t(e)] = w;
  }
  return weight;
}

}  // namespace detail

// k-fold cyclic cover of the 7-vertex torus along one torus direction;
// the per-slope weights (1, 0, 1) sum to zero around every triangle
inline MonodromySpec torus2_cyclic_spec(const CellComplex& torus, int k) {
  require(k >= 1, errc::bad_parameters, "fiber must be >= 1");
  std::vector<int> moduli = {k};
  auto weights = detail::torus7_weights(
      torus, {{1}, {0}, {1}}, 1, moduli);
  return detail::shift_monodromy(torus, moduli, weights);
}

// (a x b)-fold cover with commuting shifts: slope-1 edges move the first
// coordinate, slope-2 the second, slope-3 both
inline MonodromySpec torus2_grid_spec(const CellComplex& torus, int a,
                                      int b) {
  require(a >= 1 && b >= 1, errc::bad_parameters, "fibers must be >= 1");
  std::vector<int> moduli = {a, b};
  auto weights = detail::torus7_weights(
      torus, {{1, 0}, {0, 1}, {1, 1}}, 2, moduli);
  return detail::shift_monodromy(torus, moduli, weights);
}

inline MonodromySpec torus2_grid_spec(const CellComplex& torus, int k) {
  return torus2_grid_spec(torus, k, k);
}

// ---- monodromy JSON ------------------------------------------------------

inline Json monodromy_to_json(const MonodromySpec& spec) {
  Json j;
  j["base"] = spec.base->name();
  j["fiber"] = spec.fiber;
  j["tree_edges"] = spec.tree_edges;
  Json perms = Json::object();
  for (auto& [e, p] : spec.perms) perms[std::to_string(e)] = p;
  j["perms"] = perms;
  return j;
}

inline MonodromySpec monodromy_from_json(const Json& j,
                                         const CellComplex& base) {
  MonodromySpec spec;
  spec.base = &base;
  spec.fiber = j.at("fiber").get<int>();
  spec.tree_edges = j.at("tree_edges").get<std::vector<int>>();
  for (auto& [key, val] : j.at("perms").items())
    spec.perms[std::stoi(key)] = val.get<std::vector<int>>();
  return spec;
}

// ---- cochain transfer ----------------------------------------------------

struct ProjectedCochain {
  Cochain on_base;
  bool norm_certified = false;  // d*-norm equality verified via an
                                // injective 1-neighbourhood
};

// push c down through rho, defined on an injectively-mapped region S
inline ProjectedCochain project_cochain(const Projection& rho,
                                        const Cochain& c,
                                        const std::vector<int>& S) {
  require(c.complex().instance_id() == rho.total->instance_id(),
          errc::complex_mismatch, "cochain does not live on the total space");
  int n = c.degree();
  for (int cell : c.support())
    require(std::binary_search(S.begin(), S.end(), cell),
            errc::bad_parameters,
            "cochain support leaves the projection region");
  auto check_injective = [&](const std::vector<int>& region, bool hard) {
    std::map<int, int> seen;
    for (int cell : region) {
      auto [it, fresh] = seen.emplace(rho.project(cell), cell);
      if (!fresh) {
        if (hard)
          fail(errc::not_injective_on_region,
               "cells " + std::to_string(it->second) + " and " +
                   std::to_string(cell) + " collide over base cell " +
                   std::to_string(rho.project(cell)));
        return false;
      }
    }
    return true;
  };
  check_injective(S, true);
  Cochain down(*rho.base, n, c.group());
  for (auto& [cell, v] : c.entries()) down.set(rho.project(cell), v);

  ProjectedCochain out{std::move(down), false};
  CellGraph graph = coboundary_graph(*rho.total, n, c.group());
  if (check_injective(graph.ball(S, 1), false)) {
    std::size_t up = n < rho.total->dim() ? codifferential(c).norm() : 0;
    std::size_t dn =
        n < rho.base->dim() ? codifferential(out.on_base).norm() : 0;
    require(up == dn, errc::certificate_violated,
            "projection with injective 1-neighbourhood changed the "
            "codifferential norm from " +
                std::to_string(up) + " to " + std::to_string(dn));
    out.norm_certified = true;
  }
  return out;
}

// pull a base cochain back to the cells of region B (zero outside)
inline Cochain lift_cochain(const Projection& rho, const Cochain& down,
                            const std::vector<int>& B) {
  require(down.complex().instance_id() == rho.base->instance_id(),
          errc::complex_mismatch, "cochain does not live on the base");
  Cochain up(*rho.total, down.degree(), down.group());
  for (int cell : B) {
    GroupElem v = down.value(rho.project(cell));
    if (v) up.set(cell, v);
  }
  return up;
}

// ---- the lifting experiment ----------------------------------------------

struct LiftAttempt {
  int level = -1;
  bool has_lambda = false;
  std::int64_t radius = 0;
  bool injective = false;
};

struct LiftReport {
  std::size_t dstar_norm = 0;  // R
  bool succeeded = false;
  int level = -1;
  std::int64_t radius = 0;
  Rational lambda_used{0};
  std::size_t dist_down = 0;
  std::size_t dist_up = 0;
  std::optional<Cochain> projected;
  std::optional<Cochain> nearest_down;
  std::optional<Cochain> lifted;
  std::vector<LiftAttempt> attempts;
};

// Walk the tower from the shallowest level: find the first level whose
// exact expansion constant is known and where the (R/lambda + 1)-ball
// around supp c maps injectively, push c down, take the nearest cocycle,
// pull it back, and certify the expansion inequality upstairs. The
// deepest level projects by the identity, so it succeeds whenever its
// lambda is known. No injective level is a reported outcome, not an
// error.
inline LiftReport lifting_experiment(const Tower& tower, int n,
                                     const CoefficientGroup& A,
                                     const Cochain& c,
                                     const std::vector<ExtRational>& lambdas,
                                     const Budget& budget = {}) {
  require(int(lambdas.size()) == tower.depth(), errc::bad_parameters,
          "need one (possibly unknown) lambda per tower level");
  const CellComplex& top = tower.deepest();
  require(c.complex().instance_id() == top.instance_id(),
          errc::complex_mismatch,
          "cochain does not live on the deepest level");
  require(c.degree() == n, errc::bad_parameters, "degree mismatch");

  LiftReport rep;
  rep.dstar_norm = n < top.dim() ? codifferential(c).norm() : 0;
  CellGraph graph = coboundary_graph(top, n, A);
  auto supp = c.support();

  for (int i = 0; i < tower.depth(); ++i) {
    LiftAttempt att;
    att.level = i;
    if (!lambdas[std::size_t(i)]) {
      rep.attempts.push_back(att);
      continue;
    }
    Rational lambda = *lambdas[std::size_t(i)];
    require(lambda > Rational(0), errc::bad_parameters,
            "lifting needs a positive expansion constant");
    att.has_lambda = true;
    att.radius =
        floor_nonneg(Rational(std::int64_t(rep.dstar_norm)) / lambda) + 1;
    auto outer = graph.ball(supp, att.radius);
    Projection rho = tower.projection(i);
    std::set<int> images;
    for (int cell : outer) images.insert(rho.project(cell));
    att.injective = images.size() == outer.size();
    rep.attempts.push_back(att);
    if (!att.injective) continue;

    auto inner = graph.ball(supp, att.radius - 1);
    auto down = project_cochain(rho, c, inner);
    require(down.norm_certified, errc::certificate_violated,
            "norm certification failed inside an injective ball");
    auto nearest = subgroup_distance(down.on_base, Subgroup::cocycles,
                                     Algo::automatic, 1, budget);
    require(nearest.distance == 0 ||
                lambda * Rational(std::int64_t(nearest.distance)) <=
                    Rational(std::int64_t(rep.dstar_norm)),
            errc::certificate_violated,
            "level " + std::to_string(i) +
                " violates its claimed expansion constant");
    const Cochain& zprime = nearest.minimizers.front();
    Cochain z = lift_cochain(rho, zprime, outer);
    require(is_cocycle(z), errc::certificate_violated,
            "lift of a nearest cocycle is not a cocycle");
    std::size_t dist_up = c.distance(z);
    require(dist_up == nearest.distance, errc::certificate_violated,
            "lifting changed the distance: " + std::to_string(dist_up) +
                " upstairs vs " + std::to_string(nearest.distance) +
                " downstairs");
    require(lambda * Rational(std::int64_t(dist_up)) <=
                Rational(std::int64_t(rep.dstar_norm)),
            errc::certificate_violated,
            "expansion inequality failed after lifting");

    rep.succeeded = true;
    rep.level = i;
    rep.radius = att.radius;
    rep.lambda_used = lambda;
    rep.dist_down = nearest.distance;
    rep.dist_up = dist_up;
    rep.projected = down.on_base;
    rep.nearest_down = zprime;
    rep.lifted = std::move(z);
    return rep;
  }
  return rep;  // no injective level: recorded per attempt
}

// largest radius (up to cap) whose ball around the seed cell still maps
// injectively; the residuality proxy asserts this grows along a tower
inline int injectivity_radius(const Projection& rho, int degree,
                              const CoefficientGroup& A, int seed,
                              int cap = 16) {
  CellGraph graph = coboundary_graph(*rho.total, degree, A);
  for (int r = 1; r <= cap; ++r) {
    auto ball = graph.ball({seed}, r);
    std::set<int> images;
    for (int cell : ball) images.insert(rho.project(cell));
    if (images.size() != ball.size()) return r - 1;
  }
  return cap;
}

}  // namespace cobex
