// ratreal: run scenarios into sealed certificate reports, and verify reports.
//
// Exit codes: 0 success, 1 verification or theorem failure, 2 usage or parse
// error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ratreal/report.hpp"

namespace {

using ratreal::report::json;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ratreal::ParseError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ratreal::ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RATREAL_SEED")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw ratreal::UsageError("RATREAL_SEED must be a non-negative integer");
    return v;
  }
  return ratreal::report::kDefaultSeed;
}

void print_text(const json& report, std::ostream& out) {
  out << "kind: " << report.at("kind").get<std::string>() << "\n";
  out << "seed: " << report.at("seed") << "  bound: " << report.at("bound") << "\n";
  out << "entries: " << report.at("entries").size() << "  certificates: " << report.at("certificate_count") << "\n";
  std::size_t i = 0;
  for (const auto& e : report.at("entries")) {
    out << "[" << i++ << "] " << e.at("element").dump() << "\n";
    for (const auto& [key, value] : e.items()) {
      if (key == "element" || key == "certificates" || key == "constructive") continue;
      out << "    " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
    for (const auto& c : e.at("certificates"))
      out << "    certificate " << c.at("relation").get<std::string>() << " by " << c.at("witness").dump()
          << (c.at("verified").get<bool>() ? " (verified)" : " (NOT verified)") << "\n";
  }
  out << "digest: " << report.at("digest").get<std::string>() << "\n";
}

int do_run(const std::string& path, std::optional<std::uint64_t> seed, long bound, bool text, bool verify_only,
           bool timing) {
  ratreal::report::RunOptions opt;
  opt.seed = seed ? *seed : default_seed();
  opt.bound = bound;
  const json scenario = read_json(path);
  const auto start = std::chrono::steady_clock::now();
  json report = ratreal::report::run_scenario(scenario, opt);
  if (timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timing_ms"] = ms;
    ratreal::io::seal(report);
  }
  const auto check = ratreal::report::verify_report(report);
  if (!check.ok()) {
    for (const auto& f : check.failures) std::cerr << "verification failed: " << f << "\n";
    return kFailure;
  }
  if (verify_only) {
    std::cout << "ok: " << check.certificates_checked << " certificates verified\n";
  } else if (text) {
    print_text(report, std::cout);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return kOk;
}

int do_verify(const std::string& path) {
  const json report = read_json(path);
  const auto check = ratreal::report::verify_report(report);
  if (!check.ok()) {
    for (const auto& f : check.failures) std::cerr << "rejected: " << f << "\n";
    return kFailure;
  }
  std::cout << "ok: " << check.certificates_checked << " certificates verified\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact reality and rationality certificates for semidirect products"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  long bound = ratreal::kDefaultOrderBound;
  bool json_out = false, text_out = false, verify_only = false, timing = false;
  auto* run = app.add_subcommand("run", "Run a scenario and print its report");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--seed", seed, "Seed (default: $RATREAL_SEED, else built-in)");
  run->add_option("--bound", bound, "Element order search bound")->check(CLI::PositiveNumber);
  auto* json_flag = run->add_flag("--json", json_out, "JSON report (default)");
  run->add_flag("--text", text_out, "Human-readable report")->excludes(json_flag);
  run->add_flag("--verify-only", verify_only, "Only report whether every certificate verifies");
  run->add_flag("--timing", timing, "Include wall-clock timing (breaks byte-identity)");

  std::string report_path;
  auto* verify = app.add_subcommand("verify", "Re-multiply every certificate in a report");
  verify->add_option("report", report_path, "Report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (run->parsed()) return do_run(scenario_path, seed, bound, text_out, verify_only, timing);
    return do_verify(report_path);
  } catch (const ratreal::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ratreal::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ratreal::CapExceededError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ratreal::SingularMatrixError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ratreal::PreconditionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kFailure;
  }
}
