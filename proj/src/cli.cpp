#include "entloc/cli.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "entloc/bruteforce.hpp"
#include "entloc/error.hpp"

namespace entloc::cli {

namespace {

// Recursive-descent parser for the generator grammar documented in
// docs/formats.md.
class SpecParser {
 public:
  SpecParser(std::string_view text, std::uint64_t seed) : text_(text), seed_(seed) {}

  AnyState parse_all() {
    auto state = parse_spec();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return state;
  }

 private:
  AnyState parse_spec() {
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name == "bell") return make_bell();
    if (name == "plus" || name == "minus") {
      ComplexVector v(2);
      v << 1.0 / std::sqrt(2.0), (name == "plus" ? 1.0 : -1.0) / std::sqrt(2.0);
      return PureState(SubsystemDims{2}, v);
    }
    if (name == "ghz") {
      expect(':');
      const int n = integer();
      int d = 2;
      if (accept(':')) d = integer();
      return guarded(start, [&] { return make_ghz(n, d); });
    }
    if (name == "w") {
      expect(':');
      const int n = integer();
      return guarded(start, [&] { return make_w(n); });
    }
    if (name == "basis") {
      expect(':');
      auto dims = dims_list();
      expect(':');
      std::vector<int> digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        digits.push_back(text_[pos_++] - '0');
      return guarded(start, [&] { return make_basis(SubsystemDims(dims), digits); });
    }
    if (name == "random") {
      expect(':');
      auto dims = dims_list();
      std::uint64_t seed = seed_;
      if (accept(':')) seed = static_cast<std::uint64_t>(integer());
      return guarded(start, [&] { return random_pure(SubsystemDims(dims), seed); });
    }
    if (name == "werner") {
      expect(':');
      const double p = real();
      return guarded(start, [&] { return werner_2qubit(p); });
    }
    if (name == "product") {
      expect(':');
      expect('(');
      AnyState acc = parse_spec();
      while (accept(',')) acc = combine(acc, parse_spec());
      expect(')');
      return acc;
    }
    if (name == "mix") {
      expect(':');
      expect('(');
      std::vector<std::pair<double, DensityMatrix>> terms;
      do {
        const double w = real();
        expect('*');
        terms.emplace_back(w, as_density(parse_spec()));
      } while (accept(','));
      expect(')');
      return guarded(start, [&] { return mix(terms); });
    }
    if (name == "permute") {
      expect(':');
      expect('[');
      std::vector<int> perm{integer()};
      while (accept(',')) perm.push_back(integer());
      expect(']');
      expect(':');
      AnyState inner = parse_spec();
      return guarded(start, [&]() -> AnyState {
        if (auto* psi = std::get_if<PureState>(&inner)) return permute_subsystems(*psi, perm);
        return permute_subsystems(std::get<DensityMatrix>(inner), perm);
      });
    }
    pos_ = start;
    fail("unknown generator '" + name + "'");
  }

  static DensityMatrix as_density(const AnyState& s) {
    if (const auto* psi = std::get_if<PureState>(&s)) return density_from_pure(*psi);
    return std::get<DensityMatrix>(s);
  }

  static AnyState combine(const AnyState& a, const AnyState& b) {
    const auto* pa = std::get_if<PureState>(&a);
    const auto* pb = std::get_if<PureState>(&b);
    if (pa && pb) return tensor(*pa, *pb);
    return tensor(as_density(a), as_density(b));
  }

  template <typename F>
  AnyState guarded(std::size_t start, F&& make) {
    try {
      return AnyState(make());
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      throw UsageError("invalid generator '" + std::string(text_.substr(start, pos_ - start)) +
                       "': " + e.what());
    }
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a generator name");
    return std::string(text_.substr(start, pos_ - start));
  }

  int integer() {
    int value = 0;
    auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected an integer");
    pos_ = static_cast<std::size_t>(end - text_.data());
    return value;
  }

  double real() {
    double value = 0.0;
    auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(end - text_.data());
    return value;
  }

  std::vector<int> dims_list() {
    std::vector<int> dims{integer()};
    while (accept('x')) dims.push_back(integer());
    return dims;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& what) const {
    const auto token = pos_ < text_.size() ? std::string(text_.substr(pos_)) : std::string("<end>");
    throw UsageError("malformed state spec: " + what + " at offset " + std::to_string(pos_) +
                     " near '" + token + "'");
  }

  std::string_view text_;
  std::uint64_t seed_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_names(std::string_view names) {
  std::vector<std::string> out;
  for (const auto& spec : registry_from_names(names)) out.push_back(spec.name);
  return out;
}

void write_output(const Json& j, const std::filesystem::path& out, std::ostream& stdout_stream) {
  if (out.empty() || out == "-")
    stdout_stream << j.dump(2) << '\n';
  else
    write_json_file(out, j);
}


int report_mismatch(std::ostream& out, const std::string& what) {
  out << "MISMATCH: " << what << '\n';
  return kExitMismatch;
}

Bipartition json_bipartition(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error("bipartition must be a pair of index arrays");
  return Bipartition::of(block_from_json(j[0]), block_from_json(j[1]));
}

/// Blocks left after applying the recorded splits to {1..n} in order.
std::optional<std::string> replay_splits(int n, const Json& splits, const Partition& claimed) {
  std::vector<IndexBlock> blocks{IndexBlock::range(n)};
  for (const auto& s : splits) {
    const auto block = block_from_json(s.at("block"));
    const auto bp = json_bipartition(s.at("bipartition"));
    auto it = std::find(blocks.begin(), blocks.end(), block);
    if (it == blocks.end() || bp.parent() != block)
      return "split of " + block.to_string() + " does not match the worklist";
    *it = bp.left;
    blocks.push_back(bp.right);
  }
  if (Partition(blocks) != claimed)
    return "partition " + claimed.to_string() + " is not the result of the recorded splits " +
           Partition(blocks).to_string();
  return std::nullopt;
}

int verify_pure(const PureState& psi, const Json& report, std::ostream& out) {
  const int n = psi.party_count();
  const auto claimed = partition_from_json(report.at("partition"));
  if (claimed.ambient() != IndexBlock::range(n))
    return report_mismatch(out, "partition " + claimed.to_string() + " does not cover 1.." + std::to_string(n));
  const double tol = report.at("tolerances").at("schmidt_relative").get<double>();

  // Schmidt rank inside a factor block equals the global rank across
  // (Y | everything else), since the rest of the system is a product factor.
  const auto all = IndexBlock::range(n);
  Json splits = Json::array();
  std::size_t index = 0;
  for (const auto& e : report.at("evidence")) {
    const auto block = block_from_json(e.at("block"));
    const auto bp = json_bipartition(e.at("bipartition"));
    std::vector<int> rest;
    std::set_difference(all.begin(), all.end(), bp.left.begin(), bp.left.end(), std::back_inserter(rest));
    const int rank = schmidt_decompose(psi.amplitudes(), psi.dims(),
                                       Bipartition::of(bp.left, IndexBlock(rest)), tol)
                         .rank;
    const bool split = e.at("split").get<bool>();
    if (rank != e.at("schmidt_rank").get<int>() || split != (rank == 1))
      return report_mismatch(out, "evidence record " + std::to_string(index) + " " + block.to_string() +
                                      " " + bp.to_string() + ": recomputed Schmidt rank " +
                                      std::to_string(rank));
    if (split) splits.push_back({{"block", e.at("block")}, {"bipartition", e.at("bipartition")}});
    ++index;
  }
  if (auto problem = replay_splits(n, splits, claimed)) return report_mismatch(out, *problem);

  for (const auto& block : claimed.blocks()) {
    if (block.size() < 2) continue;
    std::size_t non_split = 0;
    for (const auto& e : report.at("evidence"))
      if (block_from_json(e.at("block")) == block && !e.at("split").get<bool>()) ++non_split;
    if (non_split != (std::size_t{1} << (block.size() - 1)) - 1)
      return report_mismatch(out, "block " + block.to_string() + " was not scanned exhaustively");
  }

  if (report.at("fully_separable").get<bool>() != claimed.is_finest() ||
      report.at("fully_entangled").get<bool>() != claimed.is_coarsest())
    return report_mismatch(out, "fully_separable / fully_entangled flags disagree with the partition");

  SeparabilityReport rebuilt;
  rebuilt.partition = claimed;
  for (const auto& f : report.at("factors")) {
    Json state = {{"kind", "pure"}, {"dims", f.at("dims")}, {"amplitudes", f.at("amplitudes")}};
    rebuilt.factors.push_back({block_from_json(f.at("block")), std::get<PureState>(state_from_json(state))});
  }
  const double fidelity = overlap_magnitude(rebuild_state(rebuilt), psi);
  if (fidelity < 1.0 - 1e-8)
    return report_mismatch(out, "factor states rebuild the input with overlap " + std::to_string(fidelity));

  if (n <= kBruteForceCap) {
    const auto brute = brute_finest_partition(psi, tol);
    if (brute != claimed)
      return report_mismatch(out, "brute-force partition " + brute.to_string() + " differs from " +
                                      claimed.to_string());
    out << "brute-force partition agrees: " << brute.to_string() << '\n';
  } else {
    out << "notice: brute-force check skipped for n = " << n << " > " << kBruteForceCap << '\n';
  }
  out << "OK\n";
  return kExitOk;
}

int verify_density(const DensityMatrix& rho, const Json& report, std::ostream& out) {
  const int n = rho.party_count();
  const auto claimed = partition_from_json(report.at("partition"));
  if (claimed.ambient() != IndexBlock::range(n))
    return report_mismatch(out, "partition " + claimed.to_string() + " does not cover 1.." + std::to_string(n));
  const double tol = report.at("tolerances").at("oracle").get<double>();
  std::size_t index = 0;
  for (const auto& e : report.at("evidence")) {
    const auto bp = json_bipartition(e.at("bipartition"));
    const auto reduced = reduce_to_bipartition(rho, bp);
    for (const auto& entry : e.at("per_oracle")) {
      if (entry.at("certificate").is_null()) continue;
      const auto name = entry.at("oracle").get<std::string>();
      const auto spec = registry_from_names(name).front();
      const auto again = spec.decide(reduced.matrix, reduced.dA, reduced.dB, tol);
      const double recorded = entry.at("certificate").at("value").get<double>();
      if (std::string(to_string(again.verdict)) != entry.at("verdict").get<std::string>() ||
          !again.certificate || std::abs(again.certificate->value - recorded) > 1e-10)
        return report_mismatch(out, "evidence record " + std::to_string(index) + " " + bp.to_string() +
                                        ": " + name + " certificate does not reproduce");
    }
    // The combined verdict must be the deciding oracle's own entry.
    const auto decided_by = e.at("decided_by").get<std::string>();
    Json expected_verdict = "INCONCLUSIVE";
    Json expected_certificate = nullptr;
    for (const auto& entry : e.at("per_oracle"))
      if (entry.at("oracle") == decided_by) {
        expected_verdict = entry.at("verdict");
        expected_certificate = entry.at("certificate");
      }
    if (e.at("verdict") != expected_verdict || e.at("certificate") != expected_certificate)
      return report_mismatch(out, "evidence record " + std::to_string(index) + " " + bp.to_string() +
                                      ": combined verdict disagrees with oracle '" + decided_by + "'");
    ++index;
  }
  if (auto problem = replay_splits(n, report.at("splits"), claimed)) return report_mismatch(out, *problem);
  out << "notice: brute-force check skipped for density-matrix input\n";
  out << "OK\n";
  return kExitOk;
}

}  // namespace

AnyState parse_state_spec(std::string_view spec, std::uint64_t default_seed) {
  return SpecParser(spec, default_seed).parse_all();
}

int exit_code_for(const Partition& pi) {
  if (pi.is_finest()) return 0;
  if (pi.is_coarsest()) return 2;
  return 1;
}

Json analyze_state(const AnyState& state, const AnalyzeOptions& options) {
  ReportContext ctx;
  ctx.input_digest = state_digest(state);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  };
  if (const auto* psi = std::get_if<PureState>(&state)) {
    auto report = localize(*psi, {options.tol, options.threads});
    if (options.timing) ctx.wall_time_ms = elapsed_ms();
    return report_to_json(report, *psi, ctx);
  }
  const auto& rho = std::get<DensityMatrix>(state);
  ctx.oracles = split_names(options.oracles);
  MixedLocalizeOptions mixed;
  mixed.tol = options.tol;
  mixed.policy = options.policy;
  mixed.threads = options.threads;
  auto report = localize_mixed(rho, registry_from_names(options.oracles), mixed);
  if (options.timing) ctx.wall_time_ms = elapsed_ms();
  return report_to_json(report, rho, ctx);
}

int cmd_generate(std::string_view spec, const std::filesystem::path& out, std::uint64_t seed,
                 std::ostream& err) {
  try {
    write_state_file(out, parse_state_spec(spec, seed));
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_analyze(const std::filesystem::path& in, const std::filesystem::path& out,
                const AnalyzeOptions& options, std::ostream& stdout_stream, std::ostream& err) {
  try {
    const auto state = read_state_file(in, options.validate ? Validation::Check : Validation::Skip);
    const Json report = analyze_state(state, options);
    write_output(report, out, stdout_stream);
    return exit_code_for(partition_from_json(report.at("partition")));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_partitions(int n, std::string_view mode, std::ostream& out, std::ostream& err) {
  try {
    if (mode == "all") {
      for (const auto& pi : enumerate_partitions(n)) out << pi.to_string() << '\n';
    } else if (mode == "bipartitions") {
      if (n < 2 || n > 20) throw Error("bipartition listing needs 2 <= n <= 20");
      for (const auto& bp : enumerate_bipartitions(IndexBlock::range(n)))
        out << "[" << bp.left.to_string() << "," << bp.right.to_string() << "]\n";
    } else if (mode == "counts") {
      if (n < 1 || n > 200) throw Error("counts need 1 <= n <= 200");
      out << "B(" << n << ") = " << bell_number(n) << '\n';
      out << "S(" << n << ",k), k=1.." << n << ":";
      for (int k = 1; k <= n; ++k) out << ' ' << stirling2(n, k);
      out << '\n';
    } else {
      throw UsageError("mode must be all, bipartitions or counts");
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_verify(const std::filesystem::path& state_path, const std::filesystem::path& report_path,
               std::ostream& out, std::ostream& err) {
  try {
    const auto state = read_state_file(state_path);
    const auto report = read_json_file(report_path);
    if (report.value("format", "") != "entloc-report") throw Error(report_path.string() + " is not a report");
    if (report.at("input_digest").get<std::string>() != state_digest(state))
      return report_mismatch(out, "input_digest does not match the state file");
    const bool pure = std::holds_alternative<PureState>(state);
    if (report.at("kind").get<std::string>() != (pure ? "pure" : "density"))
      return report_mismatch(out, "report kind does not match the state file");
    return pure ? verify_pure(std::get<PureState>(state), report, out)
                : verify_density(std::get<DensityMatrix>(state), report, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Localize partial entanglement in multipartite quantum states"};
  app.require_subcommand(1);

  std::string spec;
  std::string out_path;
  std::uint64_t seed = 0;
  auto* generate = app.add_subcommand("generate", "Write a state file from a generator spec");
  generate->add_option("spec", spec, "Generator spec, e.g. ghz:3 or product:(bell,random:2:42)")->required();
  generate->add_option("-o,--out", out_path, "Output state file")->required();
  generate->add_option("--seed", seed, "Seed for random specs without an explicit seed");

  std::string in_path;
  AnalyzeOptions analyze_opts;
  std::string policy = "definite";
  bool no_validate = false;
  bool no_timing = false;
  auto* analyze = app.add_subcommand("analyze", "Localize the finest separable partition of a state file");
  analyze->add_option("input", in_path, "State file")->required();
  analyze->add_option("-o,--out", out_path, "Report file (default: stdout)");
  analyze->add_option("--tol", analyze_opts.tol, "Relative Schmidt cut / oracle tolerance")
      ->check(CLI::Range(1e-15, 0.5));
  analyze->add_option("--oracle", analyze_opts.oracles, "Comma list of oracles in priority order (pure,ppt,ccnr)");
  analyze->add_option("--policy", policy, "Inconclusive policy: definite|heuristic")
      ->check(CLI::IsMember({"definite", "heuristic"}));
  analyze->add_option("--threads", analyze_opts.threads, "Worker threads for bipartition scans")
      ->check(CLI::Range(1, 256));
  analyze->add_flag("--no-validate", no_validate, "Accept non-normalized / non-PSD input");
  analyze->add_flag("--no-timing", no_timing, "Omit wall time from the report");
  analyze->add_option("--seed", seed, "Accepted for symmetry with generate; unused");

  int n = 0;
  std::string mode = "counts";
  auto* partitions = app.add_subcommand("partitions", "Enumerate partitions or print counts");
  partitions->add_option("n", n, "Number of subsystems")->required();
  partitions->add_option("--mode", mode, "all|bipartitions|counts")
      ->check(CLI::IsMember({"all", "bipartitions", "counts"}));

  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Re-check a report against its state file");
  verify->add_option("state", in_path, "State file")->required();
  verify->add_option("report", report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (generate->parsed()) return cmd_generate(spec, out_path, seed, std::cerr);
  if (analyze->parsed()) {
    analyze_opts.policy = policy == "heuristic" ? InconclusivePolicy::TreatAsSeparableHeuristic
                                                : InconclusivePolicy::TreatAsEntangled;
    analyze_opts.validate = !no_validate;
    analyze_opts.timing = !no_timing;
    return cmd_analyze(in_path, out_path, analyze_opts, std::cout, std::cerr);
  }
  if (partitions->parsed()) return cmd_partitions(n, mode, std::cout, std::cerr);
  return cmd_verify(in_path, report_path, std::cout, std::cerr);
}

}  // namespace entloc::cli
