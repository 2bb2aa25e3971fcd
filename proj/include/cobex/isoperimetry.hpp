#pragma once
// Minimum-weight fillings of cycles and the machinery built on them: the
// duality-based expander filling, Dehn-style filling profiles, and the
// two-point witness showing a coarse lower bound on dimension-0 filling
// constants along a tower.
//
// Chains are Cochain objects read against the boundary operator. All
// filling searches run on the arrow-reversed complex, where the boundary
// of a chain becomes the codifferential of a cochain and the coset-leader
// machinery from the expansion module applies unchanged.

#include "cobex/classify.hpp"
#include "cobex/cochain.hpp"
#include "cobex/complex.hpp"
#include "cobex/covers.hpp"
#include "cobex/duality.hpp"
#include "cobex/errors.hpp"
#include "cobex/expansion.hpp"
#include "cobex/metric.hpp"
#include "cobex/parallel.hpp"
#include "cobex/rational.hpp"
#include "cobex/rng.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cobex {

namespace detail {

// re-home a (co)chain onto a complex sharing its cell numbering
inline Cochain rehome(const CellComplex& to, int degree, const Cochain& from) {
  Cochain out(to, degree, from.group());
  for (auto& [cell, v] : from.entries()) out.set(cell, v);
  return out;
}

inline std::string support_digest(const Cochain& c, std::size_t cap = 16) {
  std::ostringstream os;
  os << "{";
  std::size_t shown = 0;
  for (int cell : c.support()) {
    if (shown == cap) {
      os << ", ...";
      break;
    }
    os << (shown ? ", " : "") << cell;
    ++shown;
  }
  os << "}";
  return os.str();
}

inline void check_fillable_degree(const Cochain& p) {
  const CellComplex& X = p.complex();
  int k = p.degree();
  if (k >= 1)
    require(boundary(p).is_zero(), errc::not_a_cycle,
            "the given " + std::to_string(k) +
                "-chain has nonzero boundary and cannot be filled");
  if (k == X.dim()) {
    require(p.is_zero(), errc::not_a_boundary,
            "'" + X.name() + "' has no cells of dimension " +
                std::to_string(k + 1) + ", so the nonzero class with support " +
                support_digest(p) + " witnesses nontrivial homology");
    fail(errc::bad_parameters,
         "the zero top-dimensional cycle has the empty filling, which has "
         "no representable degree on '" +
             X.name() + "'");
  }
}

}  // namespace detail

// some (k+1)-chain q with boundary q = p: the first solution off the
// elimination, no minimality
inline Cochain any_filling(const Cochain& p) {
  detail::check_fillable_degree(p);
  const CellComplex& X = p.complex();
  int k = p.degree();
  CellComplex Y = transpose_complex(X);
  Cochain py = detail::rehome(Y, X.dim() - k, p);
  CoboundarySolver solver(Y, X.dim() - k, p.group());
  auto u = solver.solve(py);
  require(u.has_value(), errc::not_a_boundary,
          "no filling exists: the class of the cycle with support " +
              detail::support_digest(p) + " generates homology in degree " +
              std::to_string(k) + " of '" + X.name() + "'");
  Cochain q = detail::rehome(X, k + 1, *u);
  require(boundary(q) == p, errc::certificate_violated,
          "internal: solved filling failed boundary re-verification");
  return q;
}

struct MinFilling {
  Cochain q;  // (k+1)-chain with boundary q = p, of minimum Hamming norm
  std::size_t norm = 0;
  bool exact = true;
  std::string method;
};

// minimum-Hamming-norm filling: a particular solution plus the nearest
// element of the cycle subgroup one degree up, found by the coset-leader
// search on the arrow-reversed complex
inline MinFilling min_filling(const Cochain& p, Algo algo = Algo::automatic,
                              const Budget& budget = {}) {
  detail::check_fillable_degree(p);
  const CellComplex& X = p.complex();
  int k = p.degree();
  CellComplex Y = transpose_complex(X);
  Cochain py = detail::rehome(Y, X.dim() - k, p);
  CoboundarySolver solver(Y, X.dim() - k, p.group());
  auto u = solver.solve(py);
  require(u.has_value(), errc::not_a_boundary,
          "no filling exists: the class of the cycle with support " +
              detail::support_digest(p) + " generates homology in degree " +
              std::to_string(k) + " of '" + X.name() + "'");
  // cycles of X in degree k+1 are exactly the cocycles of Y in this degree
  auto nearest = subgroup_distance(*u, Subgroup::cocycles, algo, 1, budget);
  MinFilling out{detail::rehome(X, k + 1, *u - nearest.minimizers.front()),
                 nearest.distance, nearest.exact, nearest.method};
  require(out.q.norm() == out.norm, errc::certificate_violated,
          "internal: minimized filling norm disagrees with the search");
  require(boundary(out.q) == p, errc::certificate_violated,
          "internal: minimized filling failed boundary re-verification");
  return out;
}

// ---- the duality filling pipeline ----------------------------------------

struct ExpanderCertificate {
  Cochain q;  // dual 2-chain filling p
  std::size_t p_norm = 0;
  std::size_t q_norm = 0;
  std::size_t r_norm = 0;  // the initial, unminimized filling
  std::size_t c_norm = 0;  // its transfer to a primal (n-2)-cochain
  std::size_t z_norm = 0;  // the transferred boundary, a primal cocycle
  std::size_t cocycle_distance = 0;
  Rational lambda{0};
  bool exact = true;
};

// Fill a dual 1-boundary within a factor 1/lambda of its norm: take any
// filling r, transfer it to a primal (n-2)-cochain c, replace c by its
// offset from a nearest cocycle, and transfer back. Every identity the
// argument needs is re-verified on the instance; a failure is a hard
// CertificateViolated because it would falsify either this implementation
// or the inequality itself.
inline ExpanderCertificate expander_filling(const DualStructure& ds,
                                            const Rational& lambda,
                                            const Cochain& p,
                                            Algo algo = Algo::automatic,
                                            const Budget& budget = {}) {
  require(ds.n >= 2, errc::bad_parameters,
          "the filling pipeline needs a manifold of dimension >= 2");
  require(p.complex().instance_id() == ds.dual->instance_id(),
          errc::complex_mismatch, "p must be a chain on the dual complex");
  require(p.degree() == 1, errc::bad_parameters, "p must be a 1-chain");
  require(lambda > Rational(0), errc::bad_parameters,
          "need a positive expansion constant for degree " +
              std::to_string(ds.n - 2));

  Cochain r = any_filling(p);
  Cochain c = pd_to_primal(ds, r);
  require(c.norm() == r.norm(), errc::certificate_violated,
          "duality transfer changed the filling norm");
  Cochain z = codifferential(c);
  require(z == pd_to_primal(ds, p), errc::certificate_violated,
          "transfer of the boundary disagrees with the codifferential of "
          "the transferred filling");
  require(z.norm() == p.norm(), errc::certificate_violated,
          "duality transfer changed the cycle norm");

  auto nearest = subgroup_distance(c, Subgroup::cocycles, algo, 1, budget);
  Cochain q = pd_to_dual(ds, c - nearest.minimizers.front());

  ExpanderCertificate cert{std::move(q), p.norm(),        nearest.distance,
                           r.norm(),     c.norm(),        z.norm(),
                           nearest.distance, lambda,      nearest.exact};
  require(cert.q.norm() == cert.q_norm, errc::certificate_violated,
          "duality transfer changed the minimized filling norm");
  require(boundary(cert.q) == p, errc::certificate_violated,
          "the minimized filling does not bound the given cycle");
  require(lambda * Rational(std::int64_t(cert.q_norm)) <=
              Rational(std::int64_t(cert.p_norm)),
          errc::certificate_violated,
          "filling norm " + std::to_string(cert.q_norm) +
              " exceeds (1/lambda) * " + std::to_string(cert.p_norm));
  return cert;
}

// ---- filling profiles ------------------------------------------------------

struct DehnRecord {
  Cochain p;
  Cochain q;
  std::size_t p_norm = 0;
  std::size_t q_norm = 0;
  bool exact = true;
};

struct DehnProfile {
  std::vector<DehnRecord> records;
  ExtRational kappa_hat;  // max filling ratio; empty when every p was zero
  bool all_exact = true;
};

// Sample boundaries of random sparse (k+1)-chains and measure their
// minimum fillings. A sample whose exact search exhausts its budget falls
// back to the sampled chain itself, an honest upper bound flagged
// non-exact. Extra caller-supplied cycles are profiled after the random
// ones.
inline DehnProfile dehn_profile(const CellComplex& X,
                                const CoefficientGroup& A, int k, int samples,
                                std::uint64_t seed, int sparsity = 3,
                                const std::vector<Cochain>& extra = {},
                                const Budget& budget = {}) {
  require(k >= 0 && k < X.dim(), errc::bad_parameters,
          "profile degree must leave room for fillings one degree up");
  require(samples >= 0 && sparsity >= 1, errc::bad_parameters,
          "bad sampler parameters");
  int total = samples + int(extra.size());
  auto slots = std::vector<std::optional<DehnRecord>>(std::size_t(total));

  auto measure = [&](const Cochain& p,
                     const std::optional<Cochain>& fallback) {
    DehnRecord rec{p, p, p.norm(), 0, true};
    try {
      MinFilling mf = min_filling(p, Algo::automatic, budget);
      rec.q = std::move(mf.q);
      rec.q_norm = mf.norm;
      rec.exact = mf.exact;
    } catch (const error& e) {
      if ((e.code() != errc::search_budget_exceeded &&
           e.code() != errc::table_too_large) ||
          !fallback)
        throw;
      rec.q = *fallback;
      rec.q_norm = fallback->norm();
      rec.exact = false;
    }
    require(boundary(rec.q) == p, errc::certificate_violated,
            "internal: profiled filling failed boundary re-verification");
    return rec;
  };

  // failures surface after the join, lowest sample index first, so the
  // thrown error does not depend on scheduling
  auto failures = std::vector<std::exception_ptr>(std::size_t(total));
  parallel_blocks(budget.workers, total, [&](int i) {
    try {
      if (i < samples) {
        Cochain src(X, k + 1, A);
        for (int j = 0; j < sparsity; ++j) {
          std::uint64_t draw =
              rng_at(seed, std::uint64_t(i) * 1024 + 2 * std::uint64_t(j));
          std::uint64_t val =
              rng_at(seed, std::uint64_t(i) * 1024 + 2 * std::uint64_t(j) + 1);
          int cell = int(rng_below(draw, std::uint64_t(X.cells(k + 1))));
          src.set(cell, 1 + val % (A.order() - 1));
        }
        slots[std::size_t(i)] = measure(boundary(src), src);
      } else {
        slots[std::size_t(i)] =
            measure(extra[std::size_t(i - samples)], std::nullopt);
      }
    } catch (...) {
      failures[std::size_t(i)] = std::current_exception();
    }
  });
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);

  DehnProfile out;
  for (auto& s : slots) {
    out.all_exact = out.all_exact && s->exact;
    if (s->p_norm > 0) {
      Rational ratio(std::int64_t(s->q_norm), std::int64_t(s->p_norm));
      if (!out.kappa_hat || ratio > *out.kappa_hat) out.kappa_hat = ratio;
    }
    out.records.push_back(std::move(*s));
  }
  return out;
}

// ---- the two-point witness -------------------------------------------------

struct ZeroDimWitness {
  int level = -1;
  int u = -1, v = -1;
  std::int64_t distance = 0;
  Cochain p;  // norm-2 0-chain supported on {u, v}
  Cochain q;  // its minimum filling; norm == distance > 1/kappa
  bool exact = true;
};

// Scan a tower for two vertices far enough apart that the 0-cycle on them
// defeats a dimension-0 filling inequality with the given constant: the
// cycle has norm 2 while every filling has norm > 1/kappa.
inline ZeroDimWitness zero_dim_witness(const Tower& tower,
                                       const Rational& kappa,
                                       const Budget& budget = {}) {
  require(kappa > Rational(0), errc::bad_parameters,
          "the filling constant must be positive");
  std::int64_t deepest_diameter = -1;
  for (int i = 0; i < tower.depth(); ++i) {
    const CellComplex& X = *tower.levels[std::size_t(i)];
    CellGraph g = coboundary_graph(X, 0, Z2());
    auto diam = g.diameter();
    if (!diam) continue;
    deepest_diameter = std::max(deepest_diameter, std::int64_t(*diam));
    if (!(Rational(std::int64_t(*diam)) * kappa > Rational(1))) continue;
    // lexicographically first pair past the threshold
    for (int u = 0; u < X.cells(0); ++u)
      for (int v = u + 1; v < X.cells(0); ++v) {
        auto d = g.distance(u, v);
        if (!d || !(Rational(std::int64_t(*d)) * kappa > Rational(1)))
          continue;
        Cochain p(X, 0, Z2());
        p.set(u, 1);
        p.set(v, 1);
        MinFilling mf = min_filling(p, Algo::automatic, budget);
        require(std::int64_t(mf.norm) == std::int64_t(*d),
                errc::certificate_violated,
                "minimum filling of a two-point cycle must equal the graph "
                "distance");
        return ZeroDimWitness{i,  u, v, std::int64_t(*d), std::move(p),
                              std::move(mf.q), mf.exact};
      }
  }
  fail(errc::tower_too_shallow,
       "no level separates two vertices by more than " +
           to_string(Rational(1) / kappa) + " (largest diameter seen: " +
           std::to_string(deepest_diameter) + ")");
}

}  // namespace cobex
