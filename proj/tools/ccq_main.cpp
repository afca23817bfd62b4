#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ccq/errors.hpp"
#include "ccq/multipoly.hpp"
#include "reports.hpp"

namespace {

enum Exit { kOk = 0, kViolation = 1, kBudget = 2, kConfig = 3, kInternal = 4 };

void emit(const ccq::cli::Config& cfg, const nlohmann::json& report) {
  const std::string text = cfg.format == "csv" ? ccq::cli::to_csv(report) : report.dump(2) + "\n";
  if (cfg.out_dir.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(cfg.out_dir);
  const auto path = std::filesystem::path(cfg.out_dir) / (cfg.command + "." + cfg.format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ccq::ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments on conics, cubic surfaces and points of bounded height"};
  app.require_subcommand(1);
  ccq::cli::Config cfg;

  auto common = [&](CLI::App* s, bool needs_input) {
    if (needs_input) {
      s->add_option("--surface", cfg.surface, "surface file (one form per line)");
      s->add_option("--curve", cfg.curve, "curve file (one form per line)");
    }
    s->add_option("--B", cfg.B, "height bounds")->delimiter(',');
    s->add_option("--budget", cfg.budget, "enumeration budget");
    s->add_option("--threads", cfg.threads, "worker threads for enumeration")->check(CLI::Range(1u, 256u));
    s->add_option("--seed", cfg.seed, "seed for sampled checks");
    s->add_option("--constants", cfg.constants, "key=value constants file");
    s->add_option("--out", cfg.out_dir, "output directory");
    s->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_flag("--timing", cfg.timing, "include wall-clock seconds in JSON");
    s->add_option("--line-bound", cfg.line_bound, "height bound for the rational line search");
  };

  for (const char* name : {"cayley", "pencil", "census", "count", "aux", "verify", "classify"}) {
    auto* s = app.add_subcommand(name);
    common(s, true);
    if (std::string(name) == "pencil") {
      s->add_option("--samples", cfg.samples, "height pairing samples");
      s->add_option("--nonvanishing", cfg.nonvanishing, "b-family nonvanishing samples");
    }
  }
  auto* hs = app.add_subcommand("hs");
  common(hs, false);
  hs->add_option("--d", cfg.d)->check(CLI::Range(1, 10));
  hs->add_option("--mu", cfg.mu)->check(CLI::Range(1, 100));
  hs->add_option("--m-max", cfg.m_max)->check(CLI::Range(1L, 100'000'000L));
  hs->add_option("--delta-max", cfg.delta_max)->check(CLI::Range(2, 100));
  hs->add_option("--D-max", cfg.D_max)->check(CLI::Range(2L, 100'000L));
  auto* primes = app.add_subcommand("primes");
  common(primes, false);
  primes->add_option("--x", cfg.x, "upper limit for the prime sums")->check(CLI::Range(2.0, 1e9));
  primes->add_option("--a-max", cfg.a_max, "range of the divisor prime sum check")->check(CLI::Range(2L, 100'000'000L));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.format == "csv") cfg.timing = true;

  try {
    const auto report = ccq::cli::run_command(cfg);
    emit(cfg, report);
    const auto v = ccq::cli::violations(report);
    for (const auto& s : v) std::cerr << "property violation: " << s << "\n";
    return v.empty() ? kOk : kViolation;
  } catch (const ccq::PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return kViolation;
  } catch (const ccq::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const ccq::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const ccq::DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfig;
  } catch (const ccq::PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
