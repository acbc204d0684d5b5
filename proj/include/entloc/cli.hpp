#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "entloc/error.hpp"
#include "entloc/io.hpp"
#include "entloc/mixed_separability.hpp"

namespace entloc::cli {

/// Exit codes shared by all subcommands. `analyze` additionally returns
/// 0 / 1 / 2 for completely separable / partially entangled / completely
/// entangled results.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitError = 3;
inline constexpr int kExitUsage = 4;

/// Thrown for malformed generator specs and bad flag values.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Parses a generator spec such as "product:(bell,random:2:42)".
/// `default_seed` is used by random specs that omit a seed.
AnyState parse_state_spec(std::string_view spec, std::uint64_t default_seed = 0);

struct AnalyzeOptions {
  double tol = kDefaultSchmidtTolerance;
  std::string oracles = "pure,ppt,ccnr";
  InconclusivePolicy policy = InconclusivePolicy::TreatAsEntangled;
  int threads = 1;
  bool validate = true;
  bool timing = true;
};

/// Runs the localizer matching the file kind and returns the report.
Json analyze_state(const AnyState& state, const AnalyzeOptions& options);

/// 0 for the all-singletons partition, 2 for the single block, 1 otherwise.
int exit_code_for(const Partition& pi);

int cmd_generate(std::string_view spec, const std::filesystem::path& out, std::uint64_t seed,
                 std::ostream& err);
int cmd_analyze(const std::filesystem::path& in, const std::filesystem::path& out,
                const AnalyzeOptions& options, std::ostream& stdout_stream, std::ostream& err);
int cmd_partitions(int n, std::string_view mode, std::ostream& out, std::ostream& err);
int cmd_verify(const std::filesystem::path& state, const std::filesystem::path& report,
               std::ostream& out, std::ostream& err);

/// Full command-line entry point.
int run(int argc, char** argv);

}  // namespace entloc::cli
