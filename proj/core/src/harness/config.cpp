#include "admixtope/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace admixtope::harness {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> keys;
  for (const char* k : allowed) keys.insert(k);
  for (const auto& [key, value] : j.items())
    if (!keys.count(key)) fail(path, "unknown key '" + key + "'");
}

bool has(const json& j, const char* key) { return j.contains(key) && !j.at(key).is_null(); }

long long get_int(const json& j, const char* key, const std::string& path, long long lo, long long hi) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > hi) fail(path + "." + key, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

long long get_int(const json& j, const char* key, const std::string& path, long long lo, long long hi,
                  long long fallback) {
  return has(j, key) ? get_int(j, key, path, lo, hi) : fallback;
}

double as_double(const json& v, const std::string& path, double lo, double hi) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x) || x < lo || x > hi) fail(path, "out of range");
  return x;
}

double get_double(const json& j, const char* key, const std::string& path, double lo, double hi, double fallback) {
  return has(j, key) ? as_double(j.at(key), path + "." + key, lo, hi) : fallback;
}

std::vector<double> get_doubles(const json& j, const char* key, const std::string& path, double lo, double hi) {
  std::vector<double> out;
  if (!has(j, key)) return out;
  const json& v = j.at(key);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_double(v[i], path + "." + key + "[" + std::to_string(i) + "]", lo, hi));
  return out;
}

AdmixtureModel parse_model(const json& j, const std::string& path) {
  expect_object(j, path, {"theta", "gamma", "c0"});
  if (!has(j, "theta") || !j.at("theta").is_array() || j.at("theta").empty()) fail(path + ".theta", "required k x (d+1) array");
  const json& th = j.at("theta");
  const std::size_t k = th.size();
  if (k > static_cast<std::size_t>(kMaxK)) fail(path + ".theta", "k exceeds " + std::to_string(kMaxK));
  if (!th[0].is_array()) fail(path + ".theta", "rows must be arrays");
  const std::size_t cols = th[0].size();
  if (cols < 2 || cols > static_cast<std::size_t>(kMaxD) + 1) fail(path + ".theta", "d must lie in [1, " + std::to_string(kMaxD) + "]");
  Eigen::MatrixXd theta(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < k; ++r) {
    if (!th[r].is_array() || th[r].size() != cols) fail(path + ".theta", "rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c)
      theta(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          as_double(th[r][c], path + ".theta", 0.0, 1.0);
  }
  std::vector<double> gamma = get_doubles(j, "gamma", path, 1e-6, 1e6);
  if (gamma.empty()) gamma.assign(k, 1.0);
  const double c0 = get_double(j, "c0", path, 0.0, 1.0, 0.0);
  try {
    return AdmixtureModel(std::move(theta), MixingLaw(std::move(gamma)), c0);
  } catch (const InvalidArgument& e) {
    fail(path, e.what());
  }
}

PriorSpec parse_prior(const json& j, const std::string& path) {
  expect_object(j, path, {"lambda", "gamma", "c0", "k", "d"});
  if (!has(j, "k") || !has(j, "d")) fail(path, "k and d are required");
  PriorSpec p;
  p.k = static_cast<int>(get_int(j, "k", path, 1, kMaxK));
  p.d = static_cast<int>(get_int(j, "d", path, 1, kMaxD));
  p.lambda = get_double(j, "lambda", path, 1e-6, 1e6, 1.0);
  p.c0 = get_double(j, "c0", path, 0.0, 1.0, 0.02);
  p.gamma = get_doubles(j, "gamma", path, 1e-6, 1e6);
  if (p.gamma.empty()) p.gamma.assign(static_cast<std::size_t>(p.k), 1.0);
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    fail(path, e.what());
  }
  return p;
}

SuiteConfig parse_suite(const json& j, const std::string& path) {
  expect_object(j, path, {"bound_id", "instances", "n", "eps", "reps", "deltas", "tolerance"});
  if (!has(j, "bound_id") || !j.at("bound_id").is_string()) fail(path + ".bound_id", "required string");
  SuiteConfig s;
  try {
    s.id = bound_id_from_string(j.at("bound_id").get<std::string>());
  } catch (const InvalidArgument& e) {
    fail(path + ".bound_id", e.what());
  }
  s.instances = static_cast<std::size_t>(get_int(j, "instances", path, 0, 100'000, 1));
  s.n = static_cast<int>(get_int(j, "n", path, 0, kMaxN, 0));
  s.eps = get_double(j, "eps", path, 0.0, 10.0, 0.0);
  s.reps = static_cast<std::size_t>(get_int(j, "reps", path, 0, 10'000'000, 0));
  s.deltas = get_doubles(j, "deltas", path, 0.0, 1e6);
  if (has(j, "tolerance")) s.tolerance = as_double(j.at("tolerance"), path + ".tolerance", 0.0, 10.0);
  return s;
}

}  // namespace

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::Simulate: return "simulate";
    case Experiment::Posterior: return "posterior";
    case Experiment::Verify: return "verify";
    case Experiment::Sweep: return "sweep";
    case Experiment::Minimax: return "minimax";
  }
  return "?";
}

Experiment experiment_from_string(const std::string& name) {
  for (auto e : {Experiment::Simulate, Experiment::Posterior, Experiment::Verify, Experiment::Sweep,
                 Experiment::Minimax})
    if (name == to_string(e)) return e;
  throw ConfigError("experiment: unknown kind '" + name + "'");
}

ExperimentConfig parse_config(const json& doc) {
  expect_object(doc, "config",
                {"experiment", "description", "model", "prior", "grid", "replicates", "mcmc", "sweep", "verify",
                 "minimax", "dataset"});
  if (!has(doc, "experiment") || !doc.at("experiment").is_string()) fail("config.experiment", "required string");
  ExperimentConfig c;
  c.document = doc;
  c.experiment = experiment_from_string(doc.at("experiment").get<std::string>());
  if (has(doc, "model")) c.model = parse_model(doc.at("model"), "config.model");
  if (has(doc, "prior")) c.prior = parse_prior(doc.at("prior"), "config.prior");
  if (has(doc, "grid")) {
    const json& g = doc.at("grid");
    if (!g.is_array()) fail("config.grid", "expected an array");
    for (std::size_t i = 0; i < g.size(); ++i) {
      const std::string path = "config.grid[" + std::to_string(i) + "]";
      expect_object(g[i], path, {"m", "n"});
      if (!has(g[i], "m") || !has(g[i], "n")) fail(path, "m and n are required");
      c.grid.push_back({static_cast<int>(get_int(g[i], "m", path, 1, kMaxM)),
                        static_cast<int>(get_int(g[i], "n", path, 1, kMaxN))});
    }
  }
  c.replicates = static_cast<int>(get_int(doc, "replicates", "config", 1, 1000, 1));
  if (has(doc, "mcmc")) {
    const json& m = doc.at("mcmc");
    expect_object(m, "config.mcmc", {"iters", "burnin", "thin", "chains"});
    c.mcmc.iters = static_cast<int>(get_int(m, "iters", "config.mcmc", 1, 1'000'000, 1000));
    if (has(m, "burnin")) c.mcmc.burnin = static_cast<int>(get_int(m, "burnin", "config.mcmc", 0, c.mcmc.iters - 1));
    if (has(m, "thin")) c.mcmc.thin = static_cast<int>(get_int(m, "thin", "config.mcmc", 1, 1'000'000));
    c.mcmc.chains = static_cast<int>(get_int(m, "chains", "config.mcmc", 1, 64, 1));
  }
  if (has(doc, "sweep")) {
    const json& s = doc.at("sweep");
    expect_object(s, "config.sweep", {"C", "alpha", "variant"});
    if (has(s, "C")) c.C = get_doubles(s, "C", "config.sweep", 0.0, 1e6);
    c.alpha = get_double(s, "alpha", "config.sweep", 0.0, 100.0, 0.0);
    if (has(s, "variant")) {
      const json& v = s.at("variant");
      if (v == "overfitted")
        c.variant = RateVariant::Overfitted;
      else if (v == "parametric")
        c.variant = RateVariant::Parametric;
      else
        fail("config.sweep.variant", "expected \"overfitted\" or \"parametric\"");
    }
  }
  if (has(doc, "verify")) {
    const json& v = doc.at("verify");
    expect_object(v, "config.verify", {"suites", "mc_samples"});
    c.mc_samples = static_cast<std::size_t>(get_int(v, "mc_samples", "config.verify", 2, 100'000'000, 20'000));
    if (has(v, "suites")) {
      if (!v.at("suites").is_array()) fail("config.verify.suites", "expected an array");
      for (std::size_t i = 0; i < v.at("suites").size(); ++i)
        c.suites.push_back(parse_suite(v.at("suites")[i], "config.verify.suites[" + std::to_string(i) + "]"));
    }
  }
  if (has(doc, "minimax")) {
    const json& m = doc.at("minimax");
    expect_object(m, "config.minimax", {"k", "d", "eps", "ns", "mc_samples"});
    c.minimax.k = static_cast<int>(get_int(m, "k", "config.minimax", 2, kMaxK, 4));
    c.minimax.d = static_cast<int>(get_int(m, "d", "config.minimax", 1, kMaxD, 2));
    c.minimax.eps = get_doubles(m, "eps", "config.minimax", 1e-9, 1.0);
    if (has(m, "ns")) {
      c.minimax.ns.clear();
      for (double v : get_doubles(m, "ns", "config.minimax", 1, 64)) c.minimax.ns.push_back(static_cast<int>(v));
    }
    c.minimax.mc_samples = static_cast<std::size_t>(get_int(m, "mc_samples", "config.minimax", 2, 100'000'000, 200'000));
  }
  if (has(doc, "dataset")) {
    if (!doc.at("dataset").is_string()) fail("config.dataset", "expected a path string");
    c.dataset_path = doc.at("dataset").get<std::string>();
  }
  if (has(doc, "description") && !doc.at("description").is_string()) fail("config.description", "expected a string");

  switch (c.experiment) {
    case Experiment::Simulate:
      if (!c.model || c.grid.empty()) fail("config", "simulate needs model and a nonempty grid");
      break;
    case Experiment::Posterior:
      if (!c.prior) fail("config", "posterior needs prior");
      if (!c.dataset_path && (!c.model || c.grid.empty())) fail("config", "posterior needs dataset or model + grid");
      break;
    case Experiment::Sweep:
      if (!c.model || !c.prior || c.grid.empty()) fail("config", "sweep needs model, prior and a nonempty grid");
      if (c.C.empty()) fail("config.sweep.C", "needs at least one value");
      break;
    case Experiment::Verify: break;
    case Experiment::Minimax:
      if (c.minimax.eps.empty()) fail("config.minimax.eps", "needs at least one value");
      break;
  }
  if (c.model && c.prior && c.model->d() != c.prior->d)
    fail("config", "model and prior disagree on d");
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

std::string config_hash(const json& doc) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : doc.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace admixtope::harness
