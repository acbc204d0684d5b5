#include "entloc/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "entloc/error.hpp"

namespace entloc {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("expected a [re, im] pair, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(std::string("missing field '") + name + "'");
  return j.at(name);
}

Json bipartition_to_json(const Bipartition& bp) {
  return Json::array({block_to_json(bp.left), block_to_json(bp.right)});
}

Json base_report(const char* kind, const SubsystemDims& dims, const Partition& pi, bool fully_separable,
                 bool fully_entangled, const ReportContext& ctx) {
  Json j;
  j["format"] = "entloc-report";
  j["version"] = 1;
  j["kind"] = kind;
  j["dims"] = dims.values();
  j["input_digest"] = ctx.input_digest;
  j["partition"] = partition_to_json(pi);
  j["fully_separable"] = fully_separable;
  j["fully_entangled"] = fully_entangled;
  return j;
}

}  // namespace

Json block_to_json(const IndexBlock& block) { return block.members(); }

IndexBlock block_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected an index array, got " + j.dump());
  return IndexBlock(j.get<std::vector<int>>());
}

Json partition_to_json(const Partition& pi) {
  Json out = Json::array();
  for (const auto& b : pi.blocks()) out.push_back(block_to_json(b));
  return out;
}

Partition partition_from_json(const Json& j) {
  if (!j.is_array()) throw Error("expected a nested index array, got " + j.dump());
  std::vector<IndexBlock> blocks;
  for (const auto& b : j) blocks.push_back(block_from_json(b));
  return Partition(std::move(blocks));
}

Json state_to_json(const AnyState& state) {
  Json j;
  if (const auto* psi = std::get_if<PureState>(&state)) {
    j["kind"] = "pure";
    j["dims"] = psi->dims().values();
    Json amps = Json::array();
    for (Eigen::Index i = 0; i < psi->amplitudes().size(); ++i) amps.push_back(complex_to_json(psi->amplitudes()(i)));
    j["amplitudes"] = std::move(amps);
  } else {
    const auto& rho = std::get<DensityMatrix>(state);
    j["kind"] = "density";
    j["dims"] = rho.dims().values();
    Json entries = Json::array();
    const auto& m = rho.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(complex_to_json(m(r, c)));
    j["matrix"] = std::move(entries);
  }
  return j;
}

AnyState state_from_json(const Json& j, Validation v) {
  const auto& kind = field(j, "kind");
  const auto& dims_json = field(j, "dims");
  if (!dims_json.is_array()) throw Error("'dims' must be an integer array");
  SubsystemDims dims(dims_json.get<std::vector<int>>());
  if (kind == "pure") {
    const auto& amps = field(j, "amplitudes");
    if (!amps.is_array() || amps.size() != dims.total())
      throw Error("'amplitudes' must hold " + std::to_string(dims.total()) + " [re, im] pairs");
    ComplexVector vec(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) vec(static_cast<Eigen::Index>(i)) = complex_from_json(amps[i]);
    return PureState(std::move(dims), std::move(vec), v);
  }
  if (kind == "density") {
    const auto& entries = field(j, "matrix");
    const auto d = dims.total();
    if (!entries.is_array() || entries.size() != d * d)
      throw Error("'matrix' must hold " + std::to_string(d * d) + " [re, im] pairs (row-major)");
    ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = complex_from_json(entries[r * d + c]);
    return DensityMatrix(std::move(dims), std::move(m), v);
  }
  throw Error("'kind' must be \"pure\" or \"density\", got " + kind.dump());
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

AnyState read_state_file(const std::filesystem::path& path, Validation v) {
  return state_from_json(read_json_file(path), v);
}

void write_state_file(const std::filesystem::path& path, const AnyState& state) {
  write_json_file(path, state_to_json(state));
}

std::string state_digest(const AnyState& state) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char ch : state_to_json(state).dump()) {
    hash ^= ch;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a64:") + buf;
}

Json certificate_to_json(const std::optional<Certificate>& c) {
  if (!c) return nullptr;
  return Json{{"kind", c->kind}, {"value", c->value}};
}

Json report_to_json(const SeparabilityReport& report, const PureState& input, const ReportContext& ctx) {
  Json j = base_report("pure", input.dims(), report.partition, report.fully_separable,
                       report.fully_entangled, ctx);
  j["tolerances"] = {{"schmidt_relative", report.tol}};
  Json evidence = Json::array();
  for (const auto& e : report.evidence)
    evidence.push_back({{"block", block_to_json(e.block)},
                        {"bipartition", bipartition_to_json(e.bipartition)},
                        {"schmidt_rank", e.schmidt_rank},
                        {"split", e.split}});
  j["evidence"] = std::move(evidence);
  Json factors = Json::array();
  for (const auto& f : report.factors) {
    Json fj = state_to_json(f.state);
    fj.erase("kind");
    factors.push_back({{"block", block_to_json(f.block)}, {"dims", fj["dims"]}, {"amplitudes", fj["amplitudes"]}});
  }
  j["factors"] = std::move(factors);

  Json telemetry = {{"schmidt_tests", report.schmidt_tests()},
                    {"schmidt_test_bound", report.schmidt_test_bound()}};
  if (ctx.wall_time_ms) telemetry["wall_time_ms"] = *ctx.wall_time_ms;
  j["telemetry"] = std::move(telemetry);
  return j;
}

Json report_to_json(const MixedReport& report, const DensityMatrix& input, const ReportContext& ctx) {
  Json j = base_report("density", input.dims(), report.partition, report.fully_separable,
                       report.fully_entangled, ctx);
  j["tolerances"] = {{"oracle", report.tol}};
  j["oracles"] = ctx.oracles;
  j["policy"] = std::string(to_string(report.policy));
  j["exact"] = report.exact();
  Json splits = Json::array();
  for (const auto& s : report.splits)
    splits.push_back({{"block", block_to_json(s.block)},
                      {"bipartition", bipartition_to_json(s.bipartition)},
                      {"confidence", std::string(to_string(s.confidence))}});
  j["splits"] = std::move(splits);
  Json evidence = Json::array();
  for (const auto& e : report.evidence) {
    Json per = Json::array();
    for (const auto& [name, v] : e.verdict.per_oracle)
      per.push_back({{"oracle", name}, {"verdict", std::string(to_string(v.verdict))},
                     {"certificate", certificate_to_json(v.certificate)}});
    evidence.push_back({{"block", block_to_json(e.block)},
                        {"bipartition", bipartition_to_json(e.bipartition)},
                        {"verdict", std::string(to_string(e.verdict.verdict.verdict))},
                        {"decided_by", e.verdict.decided_by},
                        {"certificate", certificate_to_json(e.verdict.verdict.certificate)},
                        {"per_oracle", std::move(per)},
                        {"split", e.split}});
  }
  j["evidence"] = std::move(evidence);
  Json unresolved = Json::array();
  for (const auto& [block, bp] : report.unresolved)
    unresolved.push_back({{"block", block_to_json(block)}, {"bipartition", bipartition_to_json(bp)}});
  j["unresolved"] = std::move(unresolved);
  Json telemetry = {{"oracle_calls", report.evidence.size()}};
  if (ctx.wall_time_ms) telemetry["wall_time_ms"] = *ctx.wall_time_ms;
  j["telemetry"] = std::move(telemetry);
  return j;
}

}  // namespace entloc
