#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entloc/linalg.hpp"

namespace entloc {

enum class Verdict { Entangled, Separable, Inconclusive };

std::string_view to_string(Verdict v);

/// Evidence behind a definite verdict.
struct Certificate {
  /// "schmidt_rank", "pt_min_eigenvalue" or "ccnr_excess".
  std::string kind;
  double value = 0.0;
};

struct OracleVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::optional<Certificate> certificate;

  static OracleVerdict entangled(Certificate c) { return {Verdict::Entangled, std::move(c)}; }
  static OracleVerdict separable(Certificate c) { return {Verdict::Separable, std::move(c)}; }
  static OracleVerdict inconclusive() { return {}; }
};

/// A bipartite separability test on an A-major (dA*dB)-dimensional matrix.
struct OracleSpec {
  std::string name;
  std::function<bool(const ComplexMatrix& rho, std::size_t dA, std::size_t dB)> applies;
  std::function<OracleVerdict(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, double tol)> decide;
};

using OracleRegistry = std::vector<OracleSpec>;

/// Largest eigenvalue a state needs for the pure oracle to apply.
inline constexpr double kPureEigenvalueThreshold = 1.0 - 1e-8;

/// Exact test for rank-one states: Schmidt rank of the dominant eigenvector.
/// Never inconclusive; throws for mixed input.
OracleVerdict oracle_pure(const ComplexMatrix& rho, std::size_t dA, std::size_t dB,
                          double tol = kDefaultSchmidtTolerance);

/// Peres-Horodecki test. A negative partial-transpose eigenvalue below -tol
/// certifies entanglement. A PSD partial transpose certifies separability
/// when the supports of the two marginals have ranks (2,2), (2,3) or (3,2),
/// or when either marginal is pure; anything else is inconclusive.
OracleVerdict oracle_ppt(const ComplexMatrix& rho, std::size_t dA, std::size_t dB,
                         double tol = kDefaultSchmidtTolerance);

/// Realignment test: trace norm of the realigned matrix above 1 + tol
/// certifies entanglement; otherwise inconclusive.
OracleVerdict oracle_ccnr(const ComplexMatrix& rho, std::size_t dA, std::size_t dB,
                          double tol = kDefaultSchmidtTolerance);

OracleSpec pure_oracle_spec();
OracleSpec ppt_oracle_spec();
OracleSpec ccnr_oracle_spec();

/// pure (when the state is rank one), ppt, ccnr.
OracleRegistry default_registry();

/// Builds a registry from a comma list such as "ppt,ccnr"; order is priority.
OracleRegistry registry_from_names(std::string_view names);

struct CombinedVerdict {
  OracleVerdict verdict;
  /// Registry name of the oracle that decided; empty when inconclusive.
  std::string decided_by;
  /// Verdicts of every applicable oracle, in registry order.
  std::vector<std::pair<std::string, OracleVerdict>> per_oracle;
};

/// Runs every applicable oracle. The first definite verdict in registry order
/// wins; contradicting definite verdicts raise an Error naming both
/// certificates.
CombinedVerdict oracle_all(const OracleRegistry& registry, const ComplexMatrix& rho, std::size_t dA,
                           std::size_t dB, double tol = kDefaultSchmidtTolerance);

/// Rank of the A (or B) marginal of an A-major bipartite matrix: eigenvalues
/// above `tol` are counted.
int marginal_rank(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, bool first, double tol);

}  // namespace entloc
