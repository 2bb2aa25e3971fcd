#include "cobex/covers.hpp"
#include "cobex/expansion.hpp"
#include "cobex/generators.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace cobex;

static Cochain random_cochain(const CellComplex& X, int k,
                              const CoefficientGroup& A, std::uint64_t seed) {
  Cochain c(X, k, A);
  for (int cell = 0; cell < X.cells(k); ++cell)
    c.set(cell, rng_at(seed, std::uint64_t(cell)) % A.order());
  return c;
}

static bool connected_skeleton(const CellComplex& X) {
  CellGraph g = coboundary_graph(X, 0, Z2());
  return int(g.ball({0}, X.cells(0)).size()) == X.cells(0);
}

// independent codifferential norm, through the dense oracle
static std::size_t oracle_dstar_norm(const Cochain& c) {
  auto dense = std::vector<GroupElem>(std::size_t(c.complex().cells(c.degree())), 0);
  for (auto& [cell, v] : c.entries()) dense[std::size_t(cell)] = v;
  return oracle::dstar_norm(c.complex(), c.degree(), c.group(), dense);
}

TEST_CASE("cyclic cover of a cycle is one long cycle") {
  auto t = cycle_tower(3, {4});
  const CellComplex& Y = t.deepest();
  CHECK(Y.cells(0) == 12);
  CHECK(Y.cells(1) == 12);
  CHECK(connected_skeleton(Y));
  // every vertex of a cycle has exactly two incident edges
  for (int v = 0; v < Y.cells(0); ++v)
    CHECK(Y.cofaces(0, v).size() == 2);
  // and it expands exactly like the 12-cycle built directly
  auto direct = gen_cycle(12);
  auto a = expansion_constant(Y, 0, Z2(), Variant::cocycle);
  auto b = expansion_constant(direct, 0, Z2(), Variant::cocycle);
  REQUIRE(a.lambda.has_value());
  REQUIRE(b.lambda.has_value());
  CHECK(*a.lambda == *b.lambda);
}

TEST_CASE("fiber-1 cover reproduces the base") {
  auto torus = gen_torus2();
  auto cov = build_cover(torus2_cyclic_spec(torus, 1));
  REQUIRE(cov.total->dim() == torus.dim());
  for (int k = 0; k <= torus.dim(); ++k) {
    REQUIRE(cov.total->cells(k) == torus.cells(k));
    for (int c = 0; c < torus.cells(k); ++c) {
      auto up = cov.total->faces(k, c);
      auto down = torus.faces(k, c);
      std::sort(up.begin(), up.end());
      std::sort(down.begin(), down.end());
      CHECK(up == down);
    }
  }
}

TEST_CASE("grid covers of the torus have the right shape") {
  auto torus = gen_torus2();
  for (int k : {2, 3}) {
    auto cov = build_cover(torus2_grid_spec(torus, k));
    int f = k * k;
    CHECK(cov.total->cells(0) == 7 * f);
    CHECK(cov.total->cells(1) == 21 * f);
    CHECK(cov.total->cells(2) == 14 * f);
    CHECK(connected_skeleton(*cov.total));
    // Euler characteristic of a torus stays zero in every cover
    CHECK(cov.total->cells(0) - cov.total->cells(1) + cov.total->cells(2) ==
          0);
    // still a closed surface: every edge bounds exactly two triangles
    for (int e = 0; e < cov.total->cells(1); ++e)
      CHECK(cov.total->cofaces(1, e).size() == 2);
  }
}

TEST_CASE("cyclic covers of the torus stay connected") {
  auto torus = gen_torus2();
  for (int k : {2, 3}) {
    auto cov = build_cover(torus2_cyclic_spec(torus, k));
    CHECK(cov.total->cells(0) == 7 * k);
    CHECK(connected_skeleton(*cov.total));
  }
}

TEST_CASE("monodromy that breaks a relator is rejected") {
  auto torus = gen_torus2();
  // a valid grid spec, then swap one permutation for a transposition that
  // no longer satisfies the triangle relations
  auto spec = torus2_grid_spec(torus, 2);
  REQUIRE(!spec.perms.empty());
  auto& p = spec.perms.begin()->second;
  std::swap(p[0], p[1]);
  CHECK_THROWS_MATCHES(validate_monodromy(spec), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == errc::relator_not_trivial;
                       }));
}

TEST_CASE("monodromy validation catches malformed input") {
  auto X = gen_cycle(4);
  MonodromySpec spec;
  spec.base = &X;
  spec.fiber = 2;
  spec.tree_edges = {0, 1};  // too few for 4 vertices
  CHECK_THROWS_MATCHES(validate_monodromy(spec), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == errc::not_spanning_tree;
                       }));
  spec.tree_edges = {0, 1, 2};
  spec.perms[1] = {1, 0};  // permutation on a tree edge
  CHECK_THROWS_MATCHES(validate_monodromy(spec), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == errc::bad_parameters;
                       }));
  spec.perms.clear();
  spec.perms[3] = {0, 0};  // not a bijection
  CHECK_THROWS_MATCHES(validate_monodromy(spec), error,
                       Catch::Matchers::Predicate<error>([](const error& e) {
                         return e.code() == errc::bad_parameters;
                       }));
  spec.perms.clear();
  spec.perms[3] = {1, 0};
  validate_monodromy(spec);  // and the repaired spec is fine
}

TEST_CASE("monodromy specs round-trip through json") {
  auto torus = gen_torus2();
  auto spec = torus2_grid_spec(torus, 3);
  auto back = monodromy_from_json(monodromy_to_json(spec), torus);
  CHECK(back.fiber == spec.fiber);
  CHECK(back.tree_edges == spec.tree_edges);
  CHECK(back.perms == spec.perms);
}

TEST_CASE("projection pushes cochains down and detects collisions") {
  auto t = cycle_tower(3, {4});
  Projection rho = t.projection(0);
  const CellComplex& Y = t.deepest();

  // two lifts of the same base vertex cannot be projected together
  Cochain bad(Y, 0, Z2());
  bad.set(0, 1);
  bad.set(1, 1);  // ids 0 and 1 sit over base vertex 0
  CHECK_THROWS_MATCHES(
      project_cochain(rho, bad, std::vector<int>{0, 1}), error,
      Catch::Matchers::Predicate<error>([](const error& e) {
        return e.code() == errc::not_injective_on_region;
      }));

  // a single vertex projects cleanly, with the norm certificate when the
  // region's 1-neighbourhood is still injective
  Cochain one(Y, 0, Z2());
  one.set(5, 1);
  auto out = project_cochain(rho, one, std::vector<int>{5});
  CHECK(out.norm_certified);
  CHECK(out.on_base.norm() == 1);
  CHECK(out.on_base.value(rho.project(5)) == 1);
  CHECK(oracle_dstar_norm(out.on_base) == oracle_dstar_norm(one));

  // a wider region over the tiny base cannot certify (its 1-neighbourhood
  // wraps), but the projection itself still goes through
  CellGraph g = coboundary_graph(Y, 0, Z2());
  auto wide = project_cochain(rho, one, g.ball({5}, 1));
  CHECK(!wide.norm_certified);
  CHECK(wide.on_base == out.on_base);
}

TEST_CASE("support outside the region is rejected") {
  auto t = cycle_tower(3, {4});
  Cochain c(t.deepest(), 0, Z2());
  c.set(7, 1);
  CHECK_THROWS_MATCHES(
      project_cochain(t.projection(0), c, std::vector<int>{0, 4, 8}), error,
      Catch::Matchers::Predicate<error>([](const error& e) {
        return e.code() == errc::bad_parameters;
      }));
}

TEST_CASE("lifting succeeds on a deep cyclic tower") {
  auto t = cycle_tower(3, {4, 2});  // 3 -> 12 -> 24 vertices
  const CellComplex& top = t.deepest();
  std::vector<ExtRational> lambdas = {
      oracle::lambda_cocycle(*t.levels[0], 0, Z2()),
      oracle::lambda_cocycle(*t.levels[1], 0, Z2()),
      ExtRational(Rational(1, 6)),  // the 24-cycle, known in closed form
  };
  REQUIRE(lambdas[0].has_value());
  REQUIRE(*lambdas[0] == Rational(2, 1));
  REQUIRE(*lambdas[1] == Rational(1, 3));

  int ok = 0;
  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    Cochain c(top, 0, Z2());
    // sparse supports keep some balls small enough to embed
    for (int v = 0; v < top.cells(0); ++v)
      if (rng_at(900 + trial, std::uint64_t(v)) % 8 == 0) c.set(v, 1);
    auto rep = lifting_experiment(t, 0, Z2(), c, lambdas);
    CHECK(rep.attempts.size() <= 3);
    if (!rep.succeeded) continue;
    ++ok;
    REQUIRE(rep.lifted.has_value());
    // the certificate the report claims, re-checked from scratch
    CHECK(oracle_dstar_norm(c) == rep.dstar_norm);
    CHECK(is_cocycle(*rep.lifted));
    CHECK(c.distance(*rep.lifted) == rep.dist_up);
    CHECK(rep.lambda_used * Rational(std::int64_t(rep.dist_up)) <=
          Rational(std::int64_t(rep.dstar_norm)));
  }
  // the deepest level always embeds (identity projection), so with its
  // lambda supplied every trial must succeed somewhere
  CHECK(ok == 30);
}

TEST_CASE("lifting prefers the shallowest level that embeds") {
  auto t = cycle_tower(3, {4});
  const CellComplex& top = t.deepest();
  std::vector<ExtRational> lambdas = {ExtRational(Rational(2, 1)),
                                      ExtRational(Rational(1, 3))};
  // the zero cochain has R = 0 and an empty ball, so level 0 wins
  Cochain zero(top, 0, Z2());
  auto rep = lifting_experiment(t, 0, Z2(), zero, lambdas);
  REQUIRE(rep.succeeded);
  CHECK(rep.level == 0);
  CHECK(rep.dist_up == 0);

  // a dense cochain floods the base fiber and must fall through to the
  // deepest level
  Cochain dense(top, 0, Z2());
  for (int v = 0; v < top.cells(0); v += 2) dense.set(v, 1);
  auto rep2 = lifting_experiment(t, 0, Z2(), dense, lambdas);
  REQUIRE(rep2.succeeded);
  CHECK(rep2.level == 1);
  REQUIRE(rep2.attempts.size() == 2);
  CHECK(!rep2.attempts[0].injective);
}

TEST_CASE("unknown lambdas are skipped, not fatal") {
  auto t = cycle_tower(3, {4});
  Cochain c(t.deepest(), 0, Z2());
  for (int v = 0; v < 12; v += 2) c.set(v, 1);
  // only the base has a lambda, and the base fiber is flooded
  std::vector<ExtRational> lambdas = {ExtRational(Rational(2, 1)),
                                      std::nullopt};
  auto rep = lifting_experiment(t, 0, Z2(), c, lambdas);
  CHECK(!rep.succeeded);
  REQUIRE(rep.attempts.size() == 2);
  CHECK(rep.attempts[0].has_lambda);
  CHECK(!rep.attempts[0].injective);
  CHECK(!rep.attempts[1].has_lambda);
}

TEST_CASE("projection injectivity radius is capped by the base") {
  // over a 3-vertex base, balls of radius 2 always repeat a base id
  auto t = cycle_tower(3, {4});
  CHECK(injectivity_radius(t.projection(0), 0, Z2(), 0) == 1);
  // the identity projection is injective out to the cap
  auto shallow = cycle_tower(24, {});
  CHECK(injectivity_radius(shallow.projection(0), 0, Z2(), 0) == 16);
}

TEST_CASE("ball growth certifies unwrapped neighbourhoods in grid covers") {
  // Around every vertex the torus looks like the 6-regular planar
  // triangulation, whose r-ball has 1 + 3r(r+1) vertices. A ball in a
  // cover is the surjective image of a plane ball, so hitting that count
  // means the ball is embedded; small covers wrap and fall short, large
  // enough ones stop wrapping at every tested radius.
  auto torus = gen_torus2();
  auto plane_ball = [](int r) { return 1 + 3 * r * (r + 1); };
  int max_r = 4;
  std::vector<int> best_k(std::size_t(max_r) + 1, -1);
  for (int k = 1; k <= 6; ++k) {
    auto cov = build_cover(torus2_grid_spec(torus, k));
    CellGraph g = coboundary_graph(*cov.total, 0, Z2());
    for (int r = 1; r <= max_r; ++r) {
      bool all = true;
      for (int v = 0; v < cov.total->cells(0) && all; ++v)
        all = int(g.ball({v}, r).size()) == plane_ball(r);
      if (all && best_k[std::size_t(r)] < 0) best_k[std::size_t(r)] = k;
    }
  }
  for (int r = 1; r <= max_r; ++r) {
    INFO("radius " << r);
    CHECK(best_k[std::size_t(r)] > 0);
  }
  // larger radii need deeper covers, never shallower ones
  for (int r = 1; r < max_r; ++r)
    CHECK(best_k[std::size_t(r)] <= best_k[std::size_t(r + 1)]);
}

TEST_CASE("rectangular grid fibers validate and build") {
  auto torus = gen_torus2();
  auto spec = torus2_grid_spec(torus, 2, 3);
  validate_monodromy(spec);
  auto cov = build_cover(spec);
  CHECK(cov.total->cells(0) == 7 * 6);
  CHECK(connected_skeleton(*cov.total));
}

TEST_CASE("projected expansion certificates survive spot checks") {
  // push random small-support cochains down an injective ball and verify
  // the oracle agrees the codifferential norm is unchanged
  auto t = cycle_tower(3, {8});  // 24 vertices over 3
  const CellComplex& top = t.deepest();
  Projection rho = t.projection(0);
  CellGraph g = coboundary_graph(top, 0, Z2());
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    int seed = int(rng_at(42, trial) % std::uint64_t(top.cells(0)));
    Cochain c(top, 0, Z2());
    c.set(seed, 1);
    auto region = g.ball({seed}, 1);
    auto out = project_cochain(rho, c, region);
    if (!out.norm_certified) continue;
    CHECK(oracle_dstar_norm(out.on_base) == oracle_dstar_norm(c));
  }
}
