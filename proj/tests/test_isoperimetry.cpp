#include "cobex/duality.hpp"
#include "cobex/generators.hpp"
#include "cobex/isoperimetry.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cobex;

static std::vector<GroupElem> dense(const Cochain& c) {
  std::vector<GroupElem> out(std::size_t(c.complex().cells(c.degree())), 0);
  for (auto& [cell, v] : c.entries()) out[std::size_t(cell)] = v;
  return out;
}

static Cochain random_chain(const CellComplex& X, int k,
                            const CoefficientGroup& A, std::uint64_t seed,
                            int sparsity) {
  Cochain c(X, k, A);
  for (int j = 0; j < sparsity; ++j) {
    auto cell = rng_below(rng_at(seed, 2 * std::uint64_t(j)),
                          std::uint64_t(X.cells(k)));
    auto val = rng_at(seed, 2 * std::uint64_t(j) + 1);
    c.set(int(cell), 1 + val % (A.order() - 1));
  }
  return c;
}

static auto has_code(errc want) {
  return Catch::Matchers::Predicate<error>(
      [want](const error& e) { return e.code() == want; });
}

TEST_CASE("the zero cycle fills with the zero chain") {
  auto C = gen_cycle(6);
  MinFilling mf = min_filling(Cochain(C, 0, Z2()));
  CHECK(mf.q.is_zero());
  CHECK(mf.norm == 0);
  CHECK(mf.exact);

  auto S = gen_sphere(3);
  mf = min_filling(Cochain(S, 1, Z2()));
  CHECK(mf.q.is_zero());
  CHECK(mf.norm == 0);
}

TEST_CASE("a single triangle fills its own boundary") {
  auto S = gen_sphere(2);
  Cochain t(S, 2, Z2());
  t.set(0, 1);
  Cochain p = boundary(t);
  REQUIRE(p.norm() == 3);

  MinFilling mf = min_filling(p);
  CHECK(mf.norm == 1);
  CHECK(mf.exact);
  CHECK(mf.q == t);  // distinct triangles have distinct boundaries

  auto o = oracle::min_fill_norm(S, 1, Z2(), dense(p));
  REQUIRE(o.has_value());
  CHECK(*o == 1);
}

TEST_CASE("minimum fillings agree with exhaustive search") {
  struct Job {
    CellComplex X;
    int k;
    CoefficientGroup A;
  };
  std::vector<Job> jobs;
  jobs.push_back({gen_sphere(2), 1, Z2()});
  jobs.push_back({gen_sphere(2), 0, Z2()});
  jobs.push_back({gen_sphere(3), 1, Z2()});
  jobs.push_back({gen_sphere(3), 2, Z2()});
  jobs.push_back({gen_torus2(), 1, Z2()});
  jobs.push_back({gen_rp2(), 1, Z2()});
  jobs.push_back({gen_cycle(6), 0, Z2()});
  jobs.push_back({gen_cycle(5), 0, CoefficientGroup({3})});
  jobs.push_back({gen_cycle(4), 0, CoefficientGroup({2, 3})});

  for (auto& job : jobs) {
    CAPTURE(job.X.name(), job.k, job.A.order());
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      Cochain src = random_chain(job.X, job.k + 1, job.A,
                                 9000 + 37 * trial, 1 + int(trial % 4));
      Cochain p = boundary(src);
      MinFilling mf = min_filling(p);
      CHECK(mf.exact);
      auto o = oracle::min_fill_norm(job.X, job.k, job.A, dense(p));
      REQUIRE(o.has_value());
      CHECK(mf.norm == *o);
      CHECK(oracle::apply_boundary(job.X, job.k + 1, job.A, dense(mf.q)) ==
            dense(p));
    }
  }
}

TEST_CASE("any filling fills, without a minimality promise") {
  auto T = gen_torus2();
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    Cochain src = random_chain(T, 2, Z2(), 400 + trial, 2);
    Cochain p = boundary(src);
    Cochain q = any_filling(p);
    CHECK(oracle::apply_boundary(T, 2, Z2(), dense(q)) == dense(p));
    CHECK(q.norm() >= min_filling(p).norm);
  }
}

TEST_CASE("cycles that bound nothing are reported as homology") {
  // top degree: the complex simply has no chains one degree up
  auto C = gen_cycle(4);
  Cochain all_edges(C, 1, Z2());
  for (int e = 0; e < C.cells(1); ++e) all_edges.set(e, 1);
  REQUIRE(boundary(all_edges).is_zero());
  CHECK_THROWS_MATCHES(min_filling(all_edges), error,
                       has_code(errc::not_a_boundary));
  CHECK_THROWS_MATCHES(min_filling(Cochain(C, 1, Z2())), error,
                       has_code(errc::bad_parameters));

  // below top degree: a loop that wraps around the torus
  auto T = gen_torus2();
  Cochain loop(T, 1, Z2());
  for (int e = 0; e < T.cells(1); ++e) {
    auto vs = T.vertex_set(1, e);
    int gap = (vs[1] - vs[0]) % 7;
    if (gap == 1 || gap == 6) loop.set(e, 1);
  }
  REQUIRE(loop.norm() == 7);
  REQUIRE(boundary(loop).is_zero());
  CHECK_THROWS_MATCHES(min_filling(loop), error,
                       has_code(errc::not_a_boundary));
  CHECK_THROWS_MATCHES(any_filling(loop), error,
                       has_code(errc::not_a_boundary));

  // and a chain that is not even a cycle
  auto S = gen_sphere(2);
  Cochain e0(S, 1, Z2());
  e0.set(0, 1);
  CHECK_THROWS_MATCHES(min_filling(e0), error, has_code(errc::not_a_cycle));
}

TEST_CASE("expander certificates hold on the boundary of the 4-simplex") {
  auto S = gen_sphere(3);
  auto ds = dual_complex(S);

  // the constant fed to the certificate, confirmed exhaustively
  Rational lambda(5, 3);
  auto o = oracle::lambda(S, 1, Z2(), oracle::all_cocycles(S, 1, Z2()));
  REQUIRE(o.has_value());
  REQUIRE(*o == lambda);

  for (std::uint64_t trial = 0; trial < 30; ++trial) {
    Cochain src = random_chain(*ds.dual, 2, Z2(), 7700 + trial,
                               1 + int(trial % 3));
    Cochain p = boundary(src);
    ExpanderCertificate cert = expander_filling(ds, lambda, p);
    CHECK(cert.exact);
    CHECK(cert.p_norm == p.norm());
    CHECK(oracle::apply_boundary(*ds.dual, 2, Z2(), dense(cert.q)) ==
          dense(p));
    CHECK(cert.r_norm == cert.c_norm);
    CHECK(cert.z_norm == cert.p_norm);
    CHECK(cert.q_norm == cert.cocycle_distance);
    CHECK(lambda * Rational(std::int64_t(cert.q_norm)) <=
          Rational(std::int64_t(cert.p_norm)));
  }

  SECTION("the zero boundary certifies trivially") {
    ExpanderCertificate cert =
        expander_filling(ds, lambda, Cochain(*ds.dual, 1, Z2()));
    CHECK(cert.q_norm == 0);
    CHECK(cert.p_norm == 0);
  }

  SECTION("an overstated constant is caught, not silently accepted") {
    Cochain src(*ds.dual, 2, Z2());
    src.set(0, 1);
    CHECK_THROWS_MATCHES(expander_filling(ds, Rational(10), boundary(src)),
                         error, has_code(errc::certificate_violated));
  }

  SECTION("only dual 1-chains are accepted") {
    CHECK_THROWS_MATCHES(
        expander_filling(ds, lambda, Cochain(*ds.dual, 2, Z2())), error,
        has_code(errc::bad_parameters));
  }
}

TEST_CASE("filling profiles stay within the expected constant") {
  auto S = gen_sphere(2);
  DehnProfile prof = dehn_profile(S, Z2(), 1, 20, 11);
  REQUIRE(prof.records.size() == 20);
  CHECK(prof.all_exact);
  REQUIRE(prof.kappa_hat.has_value());
  CHECK(*prof.kappa_hat <= Rational(1));
  for (auto& rec : prof.records) {
    CHECK(oracle::apply_boundary(S, 2, Z2(), dense(rec.q)) == dense(rec.p));
    if (rec.p_norm > 0)
      CHECK(Rational(std::int64_t(rec.q_norm), std::int64_t(rec.p_norm)) <=
            *prof.kappa_hat);
  }
}

TEST_CASE("antipodal vertex pairs on even cycles fill at half girth") {
  for (int m : {6, 12}) {
    auto C = gen_cycle(m);
    Cochain p(C, 0, Z2());
    p.set(0, 1);
    p.set(m / 2, 1);
    DehnProfile prof = dehn_profile(C, Z2(), 0, 0, 1, 3, {p});
    REQUIRE(prof.records.size() == 1);
    CHECK(prof.records[0].q_norm == std::size_t(m / 2));
    REQUIRE(prof.kappa_hat.has_value());
    CHECK(*prof.kappa_hat == Rational(m / 2, 2));
  }
}

TEST_CASE("a profile of zero cycles has no ratio to report") {
  auto C = gen_cycle(6);
  DehnProfile prof = dehn_profile(C, Z2(), 0, 0, 1, 3, {Cochain(C, 0, Z2())});
  CHECK(prof.records.size() == 1);
  CHECK(!prof.kappa_hat.has_value());
  CHECK(prof.all_exact);

  DehnProfile empty = dehn_profile(C, Z2(), 0, 0, 1);
  CHECK(empty.records.empty());
  CHECK(!empty.kappa_hat.has_value());
}

TEST_CASE("budget exhaustion falls back to the sampled chain") {
  auto S = gen_sphere(3);
  Budget tiny;
  tiny.table_limit = 4;
  tiny.node_limit = 4;

  DehnProfile prof = dehn_profile(S, Z2(), 1, 5, 3, 3, {}, tiny);
  CHECK(!prof.all_exact);
  for (auto& rec : prof.records) {
    CHECK(!rec.exact);
    // the fallback is still a genuine filling, just not a certified minimum
    CHECK(oracle::apply_boundary(S, 2, Z2(), dense(rec.q)) == dense(rec.p));
  }

  // caller-supplied cycles have no sampled chain to fall back on
  Cochain src = random_chain(S, 2, Z2(), 99, 2);
  CHECK_THROWS_MATCHES(
      dehn_profile(S, Z2(), 1, 0, 3, 3, {boundary(src)}, tiny), error,
      Catch::Matchers::Predicate<error>([](const error& e) {
        return e.code() == errc::search_budget_exceeded ||
               e.code() == errc::table_too_large;
      }));
}

TEST_CASE("deep towers yield two-point witnesses") {
  Tower tower = cycle_tower(3, {4, 2});
  ZeroDimWitness w = zero_dim_witness(tower, Rational(1, 5));
  CHECK(w.level == 1);  // the 3-cycle's diameter 1 cannot beat 1/kappa = 5
  CHECK(w.u == 0);
  CHECK(w.v == 2);
  CHECK(w.distance == 6);
  CHECK(w.p.norm() == 2);
  CHECK(w.q.norm() == 6);
  CHECK(w.exact);
  const CellComplex& L = *tower.levels[1];
  CHECK(oracle::apply_boundary(L, 1, Z2(), dense(w.q)) == dense(w.p));
}

TEST_CASE("a generous constant finds its witness immediately") {
  Tower tower = cycle_tower(6, {});
  ZeroDimWitness w = zero_dim_witness(tower, Rational(1));
  CHECK(w.level == 0);
  CHECK(w.u == 0);
  CHECK(w.v == 2);
  CHECK(w.distance == 2);
}

TEST_CASE("a tower can be too shallow for the asked constant") {
  Tower tower = cycle_tower(3, {4, 2});
  try {
    zero_dim_witness(tower, Rational(1, 100));
    FAIL("expected tower_too_shallow");
  } catch (const error& e) {
    CHECK(e.code() == errc::tower_too_shallow);
    CHECK(std::string(e.what()).find("12") != std::string::npos);
  }
  CHECK_THROWS_MATCHES(zero_dim_witness(tower, Rational(0)), error,
                       has_code(errc::bad_parameters));
}
