#pragma once
// Error taxonomy. Every failure the library can diagnose maps to a stable
// code so callers (and the CLI) can branch without parsing messages.

#include <stdexcept>
#include <string>

namespace cobex {

enum class errc {
  // structural validation
  dangling_face,
  duplicate_id,
  boundary_not_square_zero,
  complex_mismatch,
  unknown_cell,
  bad_parameters,
  // search resources
  table_too_large,
  search_budget_exceeded,
  // covers
  relator_not_trivial,
  not_spanning_tree,
  disconnected,
  not_injective_on_region,
  no_injective_level,
  // duality
  not_closed_manifold,
  disconnected_link,
  coefficient_not_supported,
  // filling
  not_a_cycle,
  not_a_boundary,
  certificate_violated,
  tower_too_shallow,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::dangling_face: return "DanglingFace";
    case errc::duplicate_id: return "DuplicateId";
    case errc::boundary_not_square_zero: return "BoundaryNotSquareZero";
    case errc::complex_mismatch: return "ComplexMismatch";
    case errc::unknown_cell: return "UnknownCell";
    case errc::bad_parameters: return "BadParameters";
    case errc::table_too_large: return "TableTooLarge";
    case errc::search_budget_exceeded: return "SearchBudgetExceeded";
    case errc::relator_not_trivial: return "RelatorNotTrivial";
    case errc::not_spanning_tree: return "NotSpanningTree";
    case errc::disconnected: return "Disconnected";
    case errc::not_injective_on_region: return "NotInjectiveOnRegion";
    case errc::no_injective_level: return "NoInjectiveLevel";
    case errc::not_closed_manifold: return "NotClosedManifold";
    case errc::disconnected_link: return "DisconnectedLink";
    case errc::coefficient_not_supported: return "CoefficientNotSupported";
    case errc::not_a_cycle: return "NotACycle";
    case errc::not_a_boundary: return "NotABoundary";
    case errc::certificate_violated: return "CertificateViolated";
    case errc::tower_too_shallow: return "TowerTooShallow";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, std::string what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
  throw error(code, what);
}

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace cobex
