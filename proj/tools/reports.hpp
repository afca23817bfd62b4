#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ccq::cli {

struct Config {
  std::string command;
  std::string surface;
  std::string curve;
  std::vector<long> B;
  std::uint64_t budget = 2'000'000'000ULL;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string constants;
  std::string out_dir;
  std::string format = "json";
  bool timing = false;
  long line_bound = 1;
  std::size_t samples = 200;       // height pairing samples
  std::size_t nonvanishing = 1000; // b-family samples
  int d = 2;
  int mu = 1;
  long m_max = 10000;
  int delta_max = 10;
  long D_max = 200;
  double x = 10000;
  long a_max = 10000;
};

/// Report for one command. Throws the library errors unchanged; a report whose property checks
/// fail carries "violations" and is returned normally.
nlohmann::json run_command(const Config& cfg);

/// Rows of a report as CSV (header from the first row), or key,value lines for flat reports.
std::string to_csv(const nlohmann::json& report);

/// Nonempty when the report records a falsified property.
std::vector<std::string> violations(const nlohmann::json& report);

}  // namespace ccq::cli
