#include "scenario.hpp"

#include <fstream>
#include <sstream>

#include <toml.hpp>

#include "schema.hpp"

namespace crossmetric::runner {

namespace {

using nlohmann::json;

json to_json(const toml::node& node, const std::string& path) {
  if (const auto* t = node.as_table()) {
    json out = json::object();
    for (const auto& [k, v] : *t) {
      const std::string key(k.str());
      out[key] = to_json(v, path.empty() ? key : path + "." + key);
    }
    return out;
  }
  if (const auto* a = node.as_array()) {
    json out = json::array();
    std::size_t i = 0;
    for (const auto& v : *a) out.push_back(to_json(v, path + "[" + std::to_string(i++) + "]"));
    return out;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  throw ConfigError(path, "unsupported value type (dates and times are not accepted)");
}

template <typename F>
auto with_key(const std::string& key, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ResourceError&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(key, e.what());
  }
}

std::size_t get_size(const json& obj, const char* key, std::size_t fallback) {
  return obj.contains(key) ? obj[key].get<std::size_t>() : fallback;
}

std::shared_ptr<const GroupModel> build_group(const json& spec, std::size_t cap) {
  std::optional<std::vector<Coordinates>> gens;
  if (spec.contains("generators")) gens = spec["generators"].get<std::vector<Coordinates>>();
  const std::string family = spec["family"].get<std::string>();
  if (family == "z^d") {
    if (!spec.contains("rank")) throw ConfigError("group.rank", "required for family z^d");
    return with_key("group.generators", [&] {
      return GroupModel::free_abelian(spec["rank"].get<int>(), gens, cap);
    });
  }
  if (family == "cyclic") {
    if (!spec.contains("order")) throw ConfigError("group.order", "required for family cyclic");
    return with_key("group.generators",
                    [&] { return GroupModel::cyclic(spec["order"].get<int>(), gens, cap); });
  }
  return with_key("group.generators", [&] { return GroupModel::heisenberg3(gens, cap); });
}

MatrixLengthFunction build_length(const json& spec, const std::shared_ptr<const GroupModel>& group,
                                  const std::filesystem::path& base_dir) {
  if (spec.is_string()) {
    const std::string kind = spec.get<std::string>();
    if (kind == "word") return MatrixLengthFunction::word(group);
    return with_key("length", [&] { return MatrixLengthFunction::torus_z2(group); });
  }
  std::filesystem::path file = spec["tabulated"].get<std::string>();
  if (file.is_relative()) file = base_dir / file;
  auto table = with_key("length.tabulated", [&] { return load_length_table(*group, file); });
  std::optional<ComplexMatrix> grading;
  if (spec.contains("grading")) grading = parse_complex_matrix(spec["grading"], "length.grading");
  const auto ext = spec.value("extension", std::string("strict")) == "word_scaled"
                       ? TabulatedExtension::WordScaled
                       : TabulatedExtension::Strict;
  return with_key("length", [&] {
    return MatrixLengthFunction::tabulated(group, std::move(table), std::move(grading), ext);
  });
}

FiniteSpectralTriple build_base(const json& spec, std::optional<RealMatrix>& distance) {
  const std::string kind = spec["kind"].get<std::string>();
  std::optional<FiniteSpectralTriple> triple;
  if (kind == "finite_metric") {
    if (!spec.contains("distance")) throw ConfigError("base.distance", "required for finite_metric");
    const auto rows = spec["distance"].get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (spec.contains("points") && spec["points"].get<Eigen::Index>() != n) {
      throw ConfigError("base.points", "does not match the size of base.distance");
    }
    RealMatrix d(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
        throw ConfigError("base.distance", "must be a square matrix");
      }
      for (Eigen::Index j = 0; j < n; ++j) d(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    triple = with_key("base.distance", [&] { return FiniteSpectralTriple::lip_triple(d); });
    distance = d;
  } else {
    if (!spec.contains("k")) throw ConfigError("base.k", "required for matrix_inner");
    std::optional<ComplexMatrix> dirac;
    if (spec.contains("dirac")) dirac = parse_complex_matrix(spec["dirac"], "base.dirac");
    triple = with_key("base.dirac", [&] {
      return FiniteSpectralTriple::matrix_algebra(spec["k"].get<Eigen::Index>(), dirac);
    });
  }
  if (spec.value("graded", false)) return triple->graded_double();
  return std::move(*triple);
}

GroupAction build_action(const json& doc, const std::shared_ptr<const GroupModel>& group,
                         const FiniteSpectralTriple& triple) {
  const json& base = doc["base"];
  std::string kind;
  if (doc.contains("action")) {
    kind = doc["action"]["kind"].get<std::string>();
  } else {
    kind = base.contains("unitaries") ? "inner" : "trivial";
  }
  if (kind == "trivial") return GroupAction::trivial(group, triple.dim());
  if (kind == "permutation") {
    if (!triple.point_count()) {
      throw ConfigError("action.kind", "permutation actions need a finite_metric base");
    }
    if (!doc["action"].contains("permutations")) {
      throw ConfigError("action.permutations", "required for permutation actions");
    }
    const auto perms = doc["action"]["permutations"].get<std::vector<std::vector<std::size_t>>>();
    return with_key("action.permutations",
                    [&] { return GroupAction::permutation(group, triple, perms); });
  }
  if (!base.contains("unitaries")) throw ConfigError("base.unitaries", "required for inner actions");
  std::vector<ComplexMatrix> us;
  for (std::size_t i = 0; i < base["unitaries"].size(); ++i) {
    const std::string key = "base.unitaries[" + std::to_string(i) + "]";
    ComplexMatrix u = parse_complex_matrix(base["unitaries"][i], key);
    if (u.rows() * 2 == triple.dim() && triple.grading()) {
      u = kron(u, ComplexMatrix::Identity(2, 2));
    }
    us.push_back(std::move(u));
  }
  return with_key("base.unitaries", [&] { return GroupAction::inner(group, std::move(us)); });
}

}  // namespace

ComplexMatrix parse_complex_matrix(const nlohmann::json& rows, const std::string& key) {
  if (!rows.is_array() || rows.empty()) throw ConfigError(key, "expected a nonempty matrix");
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows[0].size());
  ComplexMatrix out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) {
      throw ConfigError(key, "rows must have equal length");
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& e = row[static_cast<std::size_t>(j)];
      if (e.is_number()) {
        out(i, j) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        out(i, j) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError(key, "entries must be numbers or [re, im] pairs");
      }
    }
  }
  return out;
}

std::unordered_map<GroupElement, ComplexMatrix, GroupElementHash> load_length_table(
    const GroupModel& group, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError(path.string() + ": expected an object");
  std::unordered_map<GroupElement, ComplexMatrix, GroupElementHash> out;
  for (const auto& [key, flat] : doc.items()) {
    Coordinates coords;
    try {
      coords = json::parse(key).get<Coordinates>();
    } catch (const json::exception&) {
      throw ValidationError("tabulated key '" + key + "' is not a coordinate list");
    }
    if (!flat.is_array() || flat.empty()) {
      throw ValidationError("tabulated value for " + key + " must be a flat array");
    }
    const auto size = static_cast<Eigen::Index>(flat.size());
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(size))));
    if (n * n != size) throw ValidationError("tabulated value for " + key + " is not square");
    json rows = json::array();
    for (Eigen::Index i = 0; i < n; ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < n; ++j) row.push_back(flat[static_cast<std::size_t>(i * n + j)]);
      rows.push_back(row);
    }
    out.emplace(group.element(coords), parse_complex_matrix(rows, "tabulated " + key));
  }
  return out;
}

nlohmann::json load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") {
    try {
      return json::parse(buf.str());
    } catch (const json::exception& e) {
      throw ConfigError("config", e.what());
    }
  }
  try {
    const toml::table table = toml::parse(buf.str(), path.string());
    return to_json(table, "");
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << e.description() << " (line " << e.source().begin.line << ")";
    throw ConfigError("config", msg.str());
  }
}

Scenario build_scenario(const nlohmann::json& doc, const std::filesystem::path& base_dir,
                        const Overrides& overrides) {
  if (auto v = validate(scenario_schema(), doc)) throw ConfigError(v->path, v->message);

  Scenario sc;
  sc.name = doc["name"].get<std::string>();
  sc.seed = overrides.seed.value_or(doc.value("seed", std::uint64_t{0}));
  sc.checks = doc["checks"].get<std::vector<std::string>>();
  if (doc.contains("radii")) sc.radii = doc["radii"].get<std::vector<std::size_t>>();
  for (std::size_t i = 1; i < sc.radii.size(); ++i) {
    if (sc.radii[i] <= sc.radii[i - 1]) throw ConfigError("radii", "must be strictly increasing");
  }
  sc.tol = doc.value("tol", 1e-9);
  sc.plots = doc.value("plots", false);

  const std::size_t cap = overrides.max_ball.value_or(GroupModel::kDefaultBallCap);
  sc.group = build_group(doc["group"], cap);
  MatrixLengthFunction length = build_length(doc["length"], sc.group, base_dir);
  FiniteSpectralTriple triple = build_base(doc["base"], sc.distance);
  GroupAction action = build_action(doc, sc.group, triple);
  sc.context = with_key("action", [&] {
    return CrossedProduct::create(sc.group, std::move(triple), std::move(action));
  });
  sc.geometry.emplace(sc.context, std::move(length));

  if (doc.contains("parities")) {
    const auto p = doc["parities"].get<std::vector<int>>();
    sc.parities = {p[0], p[1]};
    with_key("parities", [&] { sc.geometry->require_parities(sc.parities); });
  } else {
    sc.parities = {sc.geometry->length().parity(), sc.context->triple().parity()};
  }

  if (doc.contains("operator_system")) {
    OperatorSystemSpec spec;
    const auto& os = doc["operator_system"];
    for (std::size_t i = 0; i < os["basis"].size(); ++i) {
      spec.basis.push_back(
          parse_complex_matrix(os["basis"][i], "operator_system.basis[" + std::to_string(i) + "]"));
    }
    spec.action_invariant = os.value("action_invariant", false);
    const auto rep = validate_operator_system(spec, sc.context->triple(), &sc.context->action());
    if (!rep.pass) {
      throw ConfigError("operator_system.basis",
                        "must span a unital *-invariant subspace of the algebra");
    }
    sc.operator_system = std::move(spec);
  }

  if (doc.contains("nvert") && doc["nvert"].is_object()) {
    sc.nvert = LpNorm{doc["nvert"]["lp"].get<double>()};
  }
  if (doc.contains("sampler")) {
    const auto& s = doc["sampler"];
    sc.sampler = {get_size(s, "count", sc.sampler.count),
                  get_size(s, "support_radius", sc.sampler.support_radius),
                  get_size(s, "terms", sc.sampler.terms)};
  }
  if (doc.contains("folner")) {
    const auto& f = doc["folner"];
    sc.folner = {get_size(f, "r", sc.folner.r), get_size(f, "n_min", sc.folner.n_min),
                 get_size(f, "n_max", sc.folner.n_max)};
  }
  if (sc.folner.n_min > sc.folner.n_max) throw ConfigError("folner.n_min", "exceeds folner.n_max");
  if (doc.contains("mk")) {
    const auto& m = doc["mk"];
    sc.mk = {get_size(m, "r", sc.mk.r), get_size(m, "radius", sc.mk.radius),
             get_size(m, "budget", sc.mk.budget), get_size(m, "starts", sc.mk.starts)};
  }
  // Enumerate the largest ball up front so the resource cap fails fast.
  std::size_t largest = sc.radii.back();
  for (const std::string& c : sc.checks) {
    if (c == "folner-convergence") largest = std::max(largest, sc.folner.n_max);
  }
  (void)sc.group->ball(largest);
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path, const Overrides& overrides) {
  const json doc = load_document(path);
  return build_scenario(doc, path.parent_path(), overrides);
}

}  // namespace crossmetric::runner
