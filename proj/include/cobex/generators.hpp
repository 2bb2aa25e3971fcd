#pragma once
// Built-in complex families used throughout the tests and the CLI:
// cycle graphs, skeleta and boundaries of simplices, small closed
// surfaces, a shipped 3-torus triangulation, and random complexes with a
// full lower skeleton and independently sampled top cells.

#include "cobex/complex.hpp"
#include "cobex/errors.hpp"
#include "cobex/json_io.hpp"
#include "cobex/rng.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cobex {

// cycle graph on m vertices, every edge directed i -> i+1 (mod m)
inline CellComplex gen_cycle(int m) {
  require(m >= 3, errc::bad_parameters, "cycle needs at least 3 vertices");
  std::vector<std::vector<FaceList>> inc(2);
  inc[0].resize(std::size_t(m));
  for (int i = 0; i < m; ++i)
    inc[1].push_back({{i, -1}, {(i + 1) % m, +1}});
  return CellComplex("cycle" + std::to_string(m), 1, {m, m}, std::move(inc));
}

namespace detail {

// all (d+1)-subsets of {0..m-1} in lexicographic order
inline std::vector<std::vector<int>> subsets_of_size(int m, int size) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(std::size_t(size), 0);
  for (int i = 0; i < size; ++i) cur[std::size_t(i)] = i;
  if (size > m) return out;
  for (;;) {
    out.push_back(cur);
    int i = size - 1;
    while (i >= 0 && cur[std::size_t(i)] == m - size + i) --i;
    if (i < 0) break;
    ++cur[std::size_t(i)];
    for (int j = i + 1; j < size; ++j)
      cur[std::size_t(j)] = cur[std::size_t(j - 1)] + 1;
  }
  return out;
}

// build a simplicial complex from explicit top-cell vertex lists plus all
// of their faces; incidence signs follow the sorted-vertex convention
// (face omitting the j-th smallest vertex gets (-1)^j)
inline CellComplex from_top_simplices(const std::string& name, int nverts,
                                      int dim,
                                      std::vector<std::vector<int>> tops) {
  std::vector<std::map<std::vector<int>, int>> index(std::size_t(dim) + 1);
  for (auto& t : tops) {
    std::sort(t.begin(), t.end());
    require(int(t.size()) == dim + 1, errc::bad_parameters,
            "top cell has wrong vertex count");
    index[std::size_t(dim)].emplace(t, 0);
  }
  // close downward
  for (int k = dim; k >= 1; --k)
    for (auto& [verts, idx] : index[std::size_t(k)])
      for (std::size_t j = 0; j < verts.size(); ++j) {
        std::vector<int> face = verts;
        face.erase(face.begin() + std::ptrdiff_t(j));
        index[std::size_t(k - 1)].emplace(face, 0);
      }
  for (int v = 0; v < nverts; ++v) index[0].emplace(std::vector<int>{v}, 0);
  std::vector<int> counts(std::size_t(dim) + 1);
  for (int k = 0; k <= dim; ++k) {
    int i = 0;
    for (auto& [verts, idx] : index[std::size_t(k)]) idx = i++;
    counts[std::size_t(k)] = i;
  }
  std::vector<std::vector<FaceList>> inc(std::size_t(dim) + 1);
  inc[0].resize(std::size_t(counts[0]));
  for (int k = 1; k <= dim; ++k) {
    inc[std::size_t(k)].resize(std::size_t(counts[std::size_t(k)]));
    for (auto& [verts, idx] : index[std::size_t(k)]) {
      FaceList fl;
      std::int64_t sign = 1;
      for (std::size_t j = 0; j < verts.size(); ++j) {
        std::vector<int> face = verts;
        face.erase(face.begin() + std::ptrdiff_t(j));
        fl.emplace_back(index[std::size_t(k - 1)].at(face), sign);
        sign = -sign;
      }
      inc[std::size_t(k)][std::size_t(idx)] = std::move(fl);
    }
  }
  return CellComplex(name, dim, std::move(counts), std::move(inc));
}

}  // namespace detail

// all faces of the (m-1)-simplex on m vertices up to dimension k
inline CellComplex gen_simplex_skeleton(int m, int k) {
  require(m >= 1 && k >= 0 && k <= m - 1, errc::bad_parameters,
          "skeleton needs 0 <= k <= m-1");
  auto tops = detail::subsets_of_size(m, k + 1);
  return detail::from_top_simplices(
      "skeleton" + std::to_string(m) + "_" + std::to_string(k), m, k,
      std::move(tops));
}

// boundary of the m-simplex: all proper faces, dimension m-1
inline CellComplex gen_simplex_boundary(int m) {
  require(m >= 1, errc::bad_parameters, "simplex boundary needs m >= 1");
  auto tops = detail::subsets_of_size(m + 1, m);
  return detail::from_top_simplices("boundary_simplex" + std::to_string(m),
                                    m + 1, m - 1, std::move(tops));
}

// the n-sphere as the boundary of the (n+1)-simplex
inline CellComplex gen_sphere(int n) {
  require(n >= 1, errc::bad_parameters, "sphere needs n >= 1");
  return detail::from_top_simplices("sphere" + std::to_string(n), n + 2, n,
                                    detail::subsets_of_size(n + 2, n + 1));
}

// 7-vertex triangulated torus: triangles {i,i+1,i+3} and {i,i+2,i+3} mod 7
inline CellComplex gen_torus2() {
  std::vector<std::vector<int>> tops;
  for (int i = 0; i < 7; ++i) {
    tops.push_back({i, (i + 1) % 7, (i + 3) % 7});
    tops.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return detail::from_top_simplices("torus2", 7, 2, std::move(tops));
}

// 6-vertex triangulated projective plane (hemi-icosahedron)
inline CellComplex gen_rp2() {
  std::vector<std::vector<int>> tops = {
      {0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
      {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
  return detail::from_top_simplices("rp2", 6, 2, std::move(tops));
}

// full (k-1)-skeleton on m vertices plus each k-cell kept independently
// with the given probability; counter-based RNG so results are identical
// across platforms and worker counts
inline CellComplex gen_random_lm(int m, int k, double density,
                                 std::uint64_t seed) {
  require(m >= 1 && k >= 1 && k <= m - 1, errc::bad_parameters,
          "random complex needs 1 <= k <= m-1");
  require(density >= 0.0 && density <= 1.0, errc::bad_parameters,
          "density must lie in [0,1]");
  auto candidates = detail::subsets_of_size(m, k + 1);
  std::vector<std::vector<int>> tops;
  const double scale = 18446744073709551616.0;  // 2^64
  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    std::uint64_t draw = rng_at(seed, idx);
    bool keep = density >= 1.0 || double(draw) < density * scale;
    if (keep) tops.push_back(candidates[idx]);
  }
  // the full lower skeleton is kept even where no top cell survived
  auto skel = gen_simplex_skeleton(m, k - 1);
  std::vector<int> counts(std::size_t(k) + 1);
  for (int d = 0; d <= k - 1; ++d) counts[std::size_t(d)] = skel.cells(d);
  counts[std::size_t(k)] = int(tops.size());
  std::vector<std::vector<FaceList>> inc(std::size_t(k) + 1);
  inc[0].resize(std::size_t(counts[0]));
  for (int d = 1; d <= k - 1; ++d) {
    inc[std::size_t(d)].resize(std::size_t(skel.cells(d)));
    for (int c = 0; c < skel.cells(d); ++c)
      inc[std::size_t(d)][std::size_t(c)] = skel.faces(d, c);
  }
  // face lookup by vertex set within the skeleton's top dimension
  std::map<std::vector<int>, int> face_index;
  for (int c = 0; c < skel.cells(k - 1); ++c)
    face_index[skel.vertex_set(k - 1, c)] = c;
  for (auto& t : tops) {
    FaceList fl;
    std::int64_t sign = 1;
    for (std::size_t j = 0; j < t.size(); ++j) {
      std::vector<int> face = t;
      face.erase(face.begin() + std::ptrdiff_t(j));
      fl.emplace_back(face_index.at(face), sign);
      sign = -sign;
    }
    inc[std::size_t(k)].push_back(std::move(fl));
  }
  return CellComplex("random" + std::to_string(m) + "_" + std::to_string(k),
                     k, std::move(counts), std::move(inc));
}

// shipped 3-torus triangulation, validated on load
inline CellComplex gen_torus3() {
  return load_complex_file(std::string(COBEX_DATA_DIR) + "/torus3.json");
}

// dispatch by family name; params as given on the CLI
inline CellComplex generate(const std::string& family,
                            const std::vector<std::string>& params,
                            std::uint64_t seed = 1) {
  auto need = [&](std::size_t n) {
    require(params.size() == n, errc::bad_parameters,
            "generator '" + family + "' expects " + std::to_string(n) +
                " parameter(s)");
  };
  if (family == "cycle") {
    need(1);
    return gen_cycle(std::stoi(params[0]));
  }
  if (family == "simplex_skeleton") {
    need(2);
    return gen_simplex_skeleton(std::stoi(params[0]), std::stoi(params[1]));
  }
  if (family == "simplex_boundary") {
    need(1);
    return gen_simplex_boundary(std::stoi(params[0]));
  }
  if (family == "sphere") {
    need(1);
    return gen_sphere(std::stoi(params[0]));
  }
  if (family == "torus2") {
    need(0);
    return gen_torus2();
  }
  if (family == "rp2") {
    need(0);
    return gen_rp2();
  }
  if (family == "torus3") {
    need(0);
    return gen_torus3();
  }
  if (family == "random_lm") {
    need(3);
    return gen_random_lm(std::stoi(params[0]), std::stoi(params[1]),
                         std::stod(params[2]), seed);
  }
  fail(errc::bad_parameters, "unknown generator family '" + family + "'");
}

}  // namespace cobex
