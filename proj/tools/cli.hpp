#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace fsonoma::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kNumericFailure = 2 };

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
};

/// Runs every case of the scenario and writes its CSV. A single-case
/// scenario writes exactly `out_csv`; otherwise each case goes to
/// <stem><suffix><ext> next to it. Progress and summary go to `log`.
int run_scenario(const std::filesystem::path& scenario, const std::filesystem::path& out_csv,
                 const RunOverrides& overrides, std::ostream& log, std::ostream& err);

/// Validates the scenario and prints the derived link constants,
/// thresholds and floor regime of each case.
int check_scenario(const std::filesystem::path& scenario, std::ostream& out, std::ostream& err);

/// Command-line entry: `run <scenario> --out <csv> [--seed N] [--samples N]`
/// and `check <scenario>`.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fsonoma::cli
