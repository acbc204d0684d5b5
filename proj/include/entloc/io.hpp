#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "entloc/mixed_separability.hpp"
#include "entloc/partitions.hpp"
#include "entloc/pure_separability.hpp"
#include "entloc/states.hpp"

namespace entloc {

using Json = nlohmann::ordered_json;
using AnyState = std::variant<PureState, DensityMatrix>;

/// [[1,3],[2]]
Json partition_to_json(const Partition& pi);
Partition partition_from_json(const Json& j);

Json block_to_json(const IndexBlock& block);
IndexBlock block_from_json(const Json& j);

/// {"kind": "pure"|"density", "dims": [...], "amplitudes"|"matrix": [[re, im], ...]}
/// Matrices are flattened row-major.
Json state_to_json(const AnyState& state);
AnyState state_from_json(const Json& j, Validation v = Validation::Check);

AnyState read_state_file(const std::filesystem::path& path, Validation v = Validation::Check);
void write_state_file(const std::filesystem::path& path, const AnyState& state);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

/// "fnv1a64:<16 hex digits>" of the state's canonical serialization.
std::string state_digest(const AnyState& state);

struct ReportContext {
  std::string input_digest;
  std::vector<std::string> oracles;
  std::optional<double> wall_time_ms;
};

Json report_to_json(const SeparabilityReport& report, const PureState& input, const ReportContext& ctx);
Json report_to_json(const MixedReport& report, const DensityMatrix& input, const ReportContext& ctx);

Json certificate_to_json(const std::optional<Certificate>& c);

}  // namespace entloc
