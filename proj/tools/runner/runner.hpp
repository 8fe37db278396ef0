#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace crossmetric::runner {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutEnv = "CROSSMETRIC_OUT";

struct RunOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_ball;
  std::size_t jobs = 1;
};

/// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid config,
/// 3 resource cap exceeded.
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

/// Prints the check table as "name<TAB>reference" lines.
void list_checks(std::ostream& out);

}  // namespace crossmetric::runner
