#include "cobex/generators.hpp"
#include "cobex/metric.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

using namespace cobex;

// all-pairs distance table queried once, so the axiom loops stay cheap
static std::vector<std::vector<std::optional<int>>> distance_table(
    const CellGraph& g) {
  int n = g.num_cells();
  auto out = std::vector<std::vector<std::optional<int>>>(
      std::size_t(n), std::vector<std::optional<int>>(std::size_t(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out[std::size_t(a)][std::size_t(b)] = g.distance(a, b);
  return out;
}

TEST_CASE("adjacency is symmetric and loop-free everywhere") {
  std::vector<CellComplex> all;
  all.push_back(gen_cycle(5));
  all.push_back(gen_sphere(2));
  all.push_back(gen_sphere(3));
  all.push_back(gen_torus2());
  all.push_back(gen_rp2());
  for (const auto& X : all)
    for (int k = 0; k <= X.dim(); ++k) {
      CellGraph g = coboundary_graph(X, k, Z2());
      for (int c = 0; c < g.num_cells(); ++c)
        for (int nb : g.neighbours(c)) {
          CHECK(nb != c);
          auto& back = g.neighbours(nb);
          CHECK(std::find(back.begin(), back.end(), c) != back.end());
        }
    }
}

TEST_CASE("isolated cells are exactly the ones without cofaces") {
  std::vector<CellComplex> all;
  all.push_back(gen_sphere(2));
  all.push_back(gen_torus2());
  all.push_back(gen_simplex_skeleton(4, 2));
  for (const auto& X : all)
    for (int k = 0; k <= X.dim(); ++k) {
      CellGraph g = coboundary_graph(X, k, Z2());
      for (int c = 0; c < g.num_cells(); ++c) {
        bool has_coface = k < X.dim() && !X.cofaces(k, c).empty();
        CHECK(g.neighbours(c).empty() == !has_coface);
      }
    }
}

TEST_CASE("top-degree graphs are edgeless") {
  std::vector<CellComplex> all;
  all.push_back(gen_cycle(6));
  all.push_back(gen_sphere(3));
  all.push_back(gen_torus2());
  for (const auto& X : all)
    CHECK(coboundary_graph(X, X.dim(), Z2()).edges().empty());
}

TEST_CASE("edges of the tetrahedron boundary meet through triangles") {
  auto S = gen_sphere(2);
  CellGraph g = coboundary_graph(S, 1, Z2());
  REQUIRE(g.num_cells() == 6);
  // two edges span a common triangle exactly when they share a vertex
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      if (a == b) continue;
      auto va = S.vertex_set(1, a);
      auto vb = S.vertex_set(1, b);
      std::vector<int> common;
      std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                            std::back_inserter(common));
      auto& nb = g.neighbours(a);
      bool adjacent = std::find(nb.begin(), nb.end(), b) != nb.end();
      CHECK(adjacent == !common.empty());
    }
  CHECK(g.edges().size() == 12);  // each edge meets all but its opposite

  SECTION("distances: sharing a triangle is 1, opposite is 2") {
    for (int a = 0; a < 6; ++a) CHECK(g.distance(a, a) == 0);
    auto v0 = S.vertex_set(1, 0);
    for (int b = 1; b < 6; ++b) {
      auto vb = S.vertex_set(1, b);
      std::vector<int> common;
      std::set_intersection(v0.begin(), v0.end(), vb.begin(), vb.end(),
                            std::back_inserter(common));
      CHECK(g.distance(0, b) == (common.empty() ? 2 : 1));
    }
  }

  SECTION("unit ball around one edge holds five edges") {
    auto ball = g.ball({0}, 1);
    CHECK(ball.size() == 5);
    CHECK(g.ball({0}, 0) == std::vector<int>{0});
    // past the diameter the ball saturates the component
    CHECK(g.ball({0}, 2).size() == 6);
    CHECK(g.ball({0}, 50).size() == 6);
  }
}

TEST_CASE("degree zero reduces to the path metric of the 1-skeleton") {
  std::vector<CellComplex> graphs;
  graphs.push_back(gen_cycle(7));
  graphs.push_back(gen_simplex_skeleton(5, 1));
  graphs.push_back(gen_torus2());
  for (const auto& X : graphs) {
    // independent oracle: BFS over vertex adjacency read from the edges
    int n = X.cells(0);
    auto adj = std::vector<std::set<int>>(std::size_t(n));
    for (int e = 0; e < X.cells(1); ++e) {
      auto vs = X.vertex_set(1, e);
      adj[std::size_t(vs[0])].insert(vs[1]);
      adj[std::size_t(vs[1])].insert(vs[0]);
    }
    auto bfs = [&](int from, int to) -> std::optional<int> {
      std::vector<int> dist(std::size_t(n), -1);
      std::vector<int> work{from};
      dist[std::size_t(from)] = 0;
      for (std::size_t i = 0; i < work.size(); ++i)
        for (int nb : adj[std::size_t(work[i])])
          if (dist[std::size_t(nb)] < 0) {
            dist[std::size_t(nb)] = dist[std::size_t(work[i])] + 1;
            work.push_back(nb);
          }
      if (dist[std::size_t(to)] < 0) return std::nullopt;
      return dist[std::size_t(to)];
    };
    CellGraph g = coboundary_graph(X, 0, Z2());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) CHECK(g.distance(a, b) == bfs(a, b));
  }
}

TEST_CASE("the vertex graph of a cycle is the cycle itself") {
  auto C = gen_cycle(4);
  CellGraph g = coboundary_graph(C, 0, Z2());
  std::set<std::pair<int, int>> expect;
  for (int e = 0; e < C.cells(1); ++e) {
    auto vs = C.vertex_set(1, e);
    expect.insert({vs[0], vs[1]});
  }
  auto got = g.edges();
  CHECK(std::set<std::pair<int, int>>(got.begin(), got.end()) == expect);
  CHECK(got.size() == 4);
}

TEST_CASE("metric axioms hold in every degree of every generator") {
  std::vector<CellComplex> all;
  all.push_back(gen_cycle(5));
  all.push_back(gen_sphere(2));
  all.push_back(gen_sphere(3));
  all.push_back(gen_torus2());
  all.push_back(gen_rp2());
  for (const auto& X : all)
    for (int k = 0; k <= X.dim(); ++k) {
      CAPTURE(X.name(), k);
      CellGraph g = coboundary_graph(X, k, Z2());
      auto d = distance_table(g);
      int n = g.num_cells();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          CHECK(d[std::size_t(a)][std::size_t(b)] ==
                d[std::size_t(b)][std::size_t(a)]);
          CHECK((d[std::size_t(a)][std::size_t(b)] == std::optional<int>(0)) ==
                (a == b));
        }
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (!d[std::size_t(a)][std::size_t(b)]) continue;
          for (int c = 0; c < n; ++c) {
            if (!d[std::size_t(b)][std::size_t(c)]) continue;
            REQUIRE(d[std::size_t(a)][std::size_t(c)].has_value());
            CHECK(*d[std::size_t(a)][std::size_t(c)] <=
                  *d[std::size_t(a)][std::size_t(b)] +
                      *d[std::size_t(b)][std::size_t(c)]);
          }
        }
    }
}

TEST_CASE("components respect the ambient partition and stay inside") {
  auto C = gen_cycle(6);
  CellGraph g = coboundary_graph(C, 0, Z2());

  CHECK(g.components().size() == 1);

  auto singletons = g.components_within({0, 2, 4});
  REQUIRE(singletons.size() == 3);
  for (auto& part : singletons) CHECK(part.size() == 1);

  auto arc = g.components_within({0, 1, 2});
  REQUIRE(arc.size() == 1);
  CHECK(arc[0] == std::vector<int>{0, 1, 2});

  // 0-1 and 3-4 touch only through vertices outside the set
  auto split = g.components_within({0, 1, 3, 4});
  REQUIRE(split.size() == 2);
  CHECK(split[0] == std::vector<int>{0, 1});
  CHECK(split[1] == std::vector<int>{3, 4});

  CHECK(g.components_within({}).empty());

  SECTION("parts refine the global components on a disconnected degree") {
    auto T = gen_torus2();
    CellGraph top = coboundary_graph(T, 2, Z2());
    auto parts = top.components();
    CHECK(parts.size() == std::size_t(T.cells(2)));  // all singletons
    for (auto& part : top.components_within({1, 3, 5})) {
      CHECK(part.size() == 1);
    }
  }
}

TEST_CASE("adjacency ignores cofaces whose coefficients annihilate") {
  // one edge whose incidence on vertex 0 is even: over Z2 the edge cannot
  // connect, over Z3 it can
  std::vector<std::vector<FaceList>> inc(2);
  inc[0].resize(2);
  inc[1].push_back({{0, 2}, {1, 1}});
  CellComplex X("even-incidence", 1, {2, 1}, std::move(inc));

  CHECK(coboundary_graph(X, 0, Z2()).edges().empty());
  CHECK(coboundary_graph(X, 0, CoefficientGroup({3})).edges().size() == 1);
}

TEST_CASE("face-side adjacency mirrors the coface construction") {
  auto S = gen_sphere(2);
  CellGraph g = face_graph(S, 2, Z2());
  // any two triangles of the tetrahedron boundary share an edge
  for (int t = 0; t < 4; ++t) CHECK(g.neighbours(t).size() == 3);
  CHECK(face_graph(S, 0, Z2()).edges().empty());

  auto C = gen_cycle(4);
  CHECK(face_graph(C, 1, Z2()).edges().size() == 4);
}

TEST_CASE("unknown cells are rejected") {
  auto C = gen_cycle(4);
  CellGraph g = coboundary_graph(C, 0, Z2());
  CHECK_THROWS_MATCHES(g.distance(0, 9), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == errc::unknown_cell;
                       }));
  CHECK_THROWS_MATCHES(coboundary_graph(C, 5, Z2()), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == errc::bad_parameters;
                       }));
}
