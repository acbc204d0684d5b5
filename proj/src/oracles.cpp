#include "entloc/oracles.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "entloc/error.hpp"

namespace entloc {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Entangled:
      return "ENTANGLED";
    case Verdict::Separable:
      return "SEPARABLE";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

void require_shape(const ComplexMatrix& rho, std::size_t dA, std::size_t dB) {
  const auto d = static_cast<Eigen::Index>(dA * dB);
  if (dA == 0 || dB == 0 || rho.rows() != d || rho.cols() != d)
    throw Error("oracle input of size " + std::to_string(rho.rows()) + " does not match " +
                std::to_string(dA) + "x" + std::to_string(dB));
}

double largest_eigenvalue(const ComplexMatrix& rho) {
  const auto ev = hermitian_eigenvalues(rho);
  return ev(ev.size() - 1);
}

}  // namespace

int marginal_rank(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, bool first, double tol) {
  require_shape(rho, dA, dB);
  const auto nA = static_cast<Eigen::Index>(dA);
  const auto nB = static_cast<Eigen::Index>(dB);
  ComplexMatrix marginal;
  if (first) {
    marginal = ComplexMatrix::Zero(nA, nA);
    for (Eigen::Index i = 0; i < nA; ++i)
      for (Eigen::Index k = 0; k < nA; ++k)
        for (Eigen::Index j = 0; j < nB; ++j) marginal(i, k) += rho(i * nB + j, k * nB + j);
  } else {
    marginal = ComplexMatrix::Zero(nB, nB);
    for (Eigen::Index j = 0; j < nB; ++j)
      for (Eigen::Index l = 0; l < nB; ++l)
        for (Eigen::Index i = 0; i < nA; ++i) marginal(j, l) += rho(i * nB + j, i * nB + l);
  }
  const auto ev = hermitian_eigenvalues(marginal);
  return static_cast<int>((ev.array() > tol).count());
}

OracleVerdict oracle_pure(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, double tol) {
  require_shape(rho, dA, dB);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver did not converge");
  const auto last = rho.rows() - 1;
  if (solver.eigenvalues()(last) < kPureEigenvalueThreshold)
    throw Error("oracle_pure requires pure state");
  const ComplexVector v = solver.eigenvectors().col(last);
  // A-major flat index i*dB + j becomes entry (i, j).
  ComplexMatrix m(static_cast<Eigen::Index>(dA), static_cast<Eigen::Index>(dB));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = v(i * m.cols() + j);
  const auto sigma = svd(m).sigma;
  const auto rank = (sigma.array() > tol * sigma(0)).count();
  Certificate c{"schmidt_rank", static_cast<double>(rank)};
  return rank == 1 ? OracleVerdict::separable(c) : OracleVerdict::entangled(c);
}

OracleVerdict oracle_ppt(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, double tol) {
  require_shape(rho, dA, dB);
  const double min_eigenvalue = hermitian_eigenvalues(partial_transpose(rho, dA, dB))(0);
  Certificate c{"pt_min_eigenvalue", min_eigenvalue};
  if (min_eigenvalue < -tol) return OracleVerdict::entangled(c);
  const int rank_a = marginal_rank(rho, dA, dB, true, tol);
  const int rank_b = marginal_rank(rho, dA, dB, false, tol);
  if (std::min(rank_a, rank_b) <= 1 || rank_a * rank_b <= 6) return OracleVerdict::separable(c);
  return OracleVerdict::inconclusive();
}

OracleVerdict oracle_ccnr(const ComplexMatrix& rho, std::size_t dA, std::size_t dB, double tol) {
  require_shape(rho, dA, dB);
  const double excess = trace_norm(realign(rho, dA, dB)) - 1.0;
  if (excess > tol) return OracleVerdict::entangled({"ccnr_excess", excess});
  return OracleVerdict::inconclusive();
}

OracleSpec pure_oracle_spec() {
  return {"pure",
          [](const ComplexMatrix& rho, std::size_t, std::size_t) {
            return largest_eigenvalue(rho) >= kPureEigenvalueThreshold;
          },
          [](const ComplexMatrix& rho, std::size_t dA, std::size_t dB, double tol) {
            return oracle_pure(rho, dA, dB, tol);
          }};
}

OracleSpec ppt_oracle_spec() {
  return {"ppt", [](const ComplexMatrix&, std::size_t, std::size_t) { return true; },
          [](const ComplexMatrix& rho, std::size_t dA, std::size_t dB, double tol) {
            return oracle_ppt(rho, dA, dB, tol);
          }};
}

OracleSpec ccnr_oracle_spec() {
  return {"ccnr", [](const ComplexMatrix&, std::size_t, std::size_t) { return true; },
          [](const ComplexMatrix& rho, std::size_t dA, std::size_t dB, double tol) {
            return oracle_ccnr(rho, dA, dB, tol);
          }};
}

OracleRegistry default_registry() { return {pure_oracle_spec(), ppt_oracle_spec(), ccnr_oracle_spec()}; }

OracleRegistry registry_from_names(std::string_view names) {
  OracleRegistry out;
  std::set<std::string> seen;
  std::size_t start = 0;
  while (start <= names.size()) {
    auto end = names.find(',', start);
    if (end == std::string_view::npos) end = names.size();
    std::string name(names.substr(start, end - start));
    if (name == "pure")
      out.push_back(pure_oracle_spec());
    else if (name == "ppt")
      out.push_back(ppt_oracle_spec());
    else if (name == "ccnr")
      out.push_back(ccnr_oracle_spec());
    else
      throw Error("unknown oracle '" + name + "' (expected pure, ppt or ccnr)");
    if (!seen.insert(name).second) throw Error("oracle '" + name + "' listed twice");
    start = end + 1;
  }
  return out;
}

namespace {

std::string describe(const std::string& name, const OracleVerdict& v) {
  std::ostringstream out;
  out << name << " " << to_string(v.verdict);
  if (v.certificate) out << " (" << v.certificate->kind << " = " << v.certificate->value << ")";
  return out.str();
}

}  // namespace

CombinedVerdict oracle_all(const OracleRegistry& registry, const ComplexMatrix& rho, std::size_t dA,
                           std::size_t dB, double tol) {
  if (registry.empty()) throw Error("oracle registry is empty");
  CombinedVerdict out;
  const std::pair<std::string, OracleVerdict>* first_definite = nullptr;
  for (const auto& spec : registry) {
    if (!spec.applies(rho, dA, dB)) continue;
    out.per_oracle.emplace_back(spec.name, spec.decide(rho, dA, dB, tol));
  }
  for (const auto& entry : out.per_oracle) {
    if (entry.second.verdict == Verdict::Inconclusive) continue;
    if (!first_definite) {
      first_definite = &entry;
    } else if (entry.second.verdict != first_definite->second.verdict) {
      throw Error("conflicting oracle verdicts: " + describe(first_definite->first, first_definite->second) +
                  " vs " + describe(entry.first, entry.second));
    }
  }
  if (first_definite) {
    out.verdict = first_definite->second;
    out.decided_by = first_definite->first;
  }
  return out;
}

}  // namespace entloc
