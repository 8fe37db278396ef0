#include "runner.hpp"

#include <cstdlib>
#include <future>
#include <string>
#include <vector>

#include "checks.hpp"
#include "output.hpp"
#include "scenario.hpp"

namespace crossmetric::runner {

namespace {

std::filesystem::path output_dir(const RunOptions& options, const Scenario& sc) {
  if (options.out) return *options.out;
  if (const char* env = std::getenv(kOutEnv); env && *env) return std::filesystem::path(env) / sc.name;
  return std::filesystem::path("crossmetric-out") / sc.name;
}

CheckOutcome guarded(const std::string& name, const Scenario& sc) {
  try {
    return run_check(name, sc);
  } catch (const ResourceError&) {
    throw;
  } catch (const Error& e) {
    // A check that cannot complete is reported as failed, not as a crash.
    nlohmann::json report = {{"check", name},
                             {"reference", find_check(name)->reference},
                             {"lhs", nullptr},
                             {"rhs", nullptr},
                             {"radius", nullptr},
                             {"slack", nullptr},
                             {"pass", false},
                             {"error", e.what()},
                             {"cases", nlohmann::json::array()}};
    return {name, false, std::move(report), {}};
  }
}

std::vector<CheckOutcome> execute(const Scenario& sc, std::size_t jobs) {
  std::vector<CheckOutcome> results(sc.checks.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < sc.checks.size(); ++i) results[i] = guarded(sc.checks[i], sc);
    return results;
  }
  // Checks are independent and seeded by name, so order of completion is irrelevant.
  for (std::size_t start = 0; start < sc.checks.size(); start += jobs) {
    std::vector<std::future<CheckOutcome>> batch;
    for (std::size_t i = start; i < std::min(sc.checks.size(), start + jobs); ++i) {
      batch.push_back(std::async(std::launch::async, [&sc, i] { return guarded(sc.checks[i], sc); }));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) results[start + k] = batch[k].get();
  }
  return results;
}

}  // namespace

void list_checks(std::ostream& out) {
  for (const auto& c : check_table()) out << c.name << "\t" << c.reference << "\n";
}

int run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const Scenario sc = load_scenario(options.config, {options.seed, options.max_ball});
    const std::vector<CheckOutcome> results = execute(sc, options.jobs);

    const std::filesystem::path dir = output_dir(options, sc);
    std::filesystem::create_directories(dir);
    nlohmann::json summary;
    summary["scenario"] = sc.name;
    summary["seed"] = sc.seed;
    summary["checks"] = nlohmann::json::array();
    std::vector<std::string> failing;
    for (const auto& r : results) {
      nlohmann::json report = r.report;
      report["scenario"] = sc.name;
      report["seed"] = sc.seed;
      write_atomic(dir / (r.name + ".json"), report.dump(2) + "\n");
      for (const auto& a : r.artifacts) write_atomic(dir / a.filename, a.contents);
      summary["checks"].push_back({{"check", r.name}, {"pass", r.pass}});
      out << (r.pass ? "PASS " : "FAIL ") << r.name << "\n";
      if (!r.pass) failing.push_back(r.name);
    }
    summary["pass"] = failing.empty();
    write_atomic(dir / "summary.json", summary.dump(2) + "\n");
    if (!failing.empty()) {
      err << "failing checks:";
      for (const auto& f : failing) err << " " << f << ".json";
      err << "\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    err << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const ModelMismatchError& e) {
    err << "invalid config: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace crossmetric::runner
