#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crossmetric/crossmetric.hpp"

namespace crossmetric::runner {

/// Invalid configuration. `key` names the offending entry.
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string key, const std::string& message)
      : ValidationError(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct SamplerSpec {
  std::size_t count = 5;
  std::size_t support_radius = 1;
  std::size_t terms = 3;
};

struct FolnerSpec {
  std::size_t r = 2;
  std::size_t n_min = 1;
  std::size_t n_max = 6;
};

struct MKSpec {
  std::size_t r = 1;
  std::size_t radius = 3;
  std::size_t budget = 4000;
  std::size_t starts = 2;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_ball;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<std::string> checks;
  std::vector<std::size_t> radii = {2, 3, 4};
  double tol = 1e-9;
  bool plots = false;

  std::shared_ptr<const GroupModel> group;
  std::shared_ptr<const CrossedProduct> context;
  std::optional<CrossedGeometry> geometry;
  std::optional<RealMatrix> distance;
  std::optional<OperatorSystemSpec> operator_system;
  Parities parities;
  VerticalNorm nvert = SupNorm{};
  SamplerSpec sampler;
  FolnerSpec folner;
  MKSpec mk;
};

/// Reads a TOML (or .json) file and converts it to a JSON document.
nlohmann::json load_document(const std::filesystem::path& path);

/// Validates against the schema and builds every model. Throws ConfigError.
Scenario build_scenario(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                        const Overrides& overrides = {});

Scenario load_scenario(const std::filesystem::path& path, const Overrides& overrides = {});

/// Complex matrix from rows of numbers or [re, im] pairs.
ComplexMatrix parse_complex_matrix(const nlohmann::json& rows, const std::string& key);

/// Tabulated length values: {"[c1, c2, ...]": row-major flat complex array}.
std::unordered_map<GroupElement, ComplexMatrix, GroupElementHash> load_length_table(
    const GroupModel& group, const std::filesystem::path& path);

}  // namespace crossmetric::runner
