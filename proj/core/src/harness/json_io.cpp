#include "admixtope/harness/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "admixtope/error.hpp"

namespace admixtope::harness {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Polytope& g) {
  json verts = json::array();
  for (const Point& v : g.generators()) verts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return {{"vertices", verts}, {"on_simplex", g.on_simplex()}};
}

Polytope polytope_from_json(const json& j) {
  require(j.is_object() && j.contains("vertices") && j.at("vertices").is_array(), "polytope JSON needs vertices");
  std::vector<Point> pts;
  for (const auto& v : j.at("vertices")) {
    const auto xs = v.get<std::vector<double>>();
    pts.emplace_back(Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size())));
  }
  return extreme_points(std::move(pts), j.value("on_simplex", false));
}

json to_json(const AdmixtureModel& m) {
  return {{"theta", matrix_to_json(m.theta())}, {"gamma", m.mixing().gamma()}, {"c0", m.c0()}};
}

AdmixtureModel model_from_json(const json& j) {
  require(j.is_object() && j.contains("theta"), "model JSON needs theta");
  const auto rows = j.at("theta").get<std::vector<std::vector<double>>>();
  require(!rows.empty(), "model JSON: empty theta");
  Eigen::MatrixXd theta(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == rows.front().size(), "model JSON: ragged theta");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      theta(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  std::vector<double> gamma =
      j.contains("gamma") ? j.at("gamma").get<std::vector<double>>() : std::vector<double>(rows.size(), 1.0);
  return AdmixtureModel(std::move(theta), MixingLaw(std::move(gamma)), j.value("c0", 0.0));
}

json to_json(const Dataset& x, std::optional<std::uint64_t> seed, const AdmixtureModel* model) {
  json rows = json::array();
  for (int i = 0; i < x.m(); ++i) {
    json row = json::array();
    for (int j = 0; j < x.n(); ++j) row.push_back(static_cast<int>(x.at(i, j)));
    rows.push_back(std::move(row));
  }
  json out = {{"d", x.d()}, {"m", x.m()}, {"n", x.n()}, {"rows", rows}};
  if (seed) out["seed"] = *seed;
  if (model) out["model"] = to_json(*model);
  return out;
}

Dataset dataset_from_json(const json& j) {
  require(j.is_object() && j.contains("d") && j.contains("m") && j.contains("n") && j.contains("rows"),
          "dataset JSON needs d, m, n and rows");
  const int d = j.at("d").get<int>(), m = j.at("m").get<int>(), n = j.at("n").get<int>();
  require(j.at("rows").is_array() && static_cast<int>(j.at("rows").size()) == m, "dataset JSON: row count differs from m");
  std::vector<std::uint8_t> x;
  for (const auto& row : j.at("rows")) {
    require(row.is_array() && static_cast<int>(row.size()) == n, "dataset JSON: row length differs from n");
    for (const auto& s : row) {
      const int v = s.get<int>();
      require(v >= 0 && v <= d, "dataset JSON: symbol outside the alphabet");
      x.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return Dataset(d, m, n, std::move(x));
}

namespace {

json real_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json to_json(const BoundReport& r) {
  json fitted = json::object();
  for (const auto& [k, v] : r.fitted_constants) fitted[k] = real_or_null(v);
  return {{"bound_id", r.bound_id},
          {"instance", r.instance},
          {"lhs", real_or_null(r.lhs)},
          {"rhs", real_or_null(r.rhs)},
          {"margin", real_or_null(r.margin)},
          {"tolerance", r.tolerance},
          {"pass", r.pass},
          {"literal", r.literal},
          {"fitted_constants", fitted},
          {"seed", r.seed}};
}

json to_json(const PosteriorSample& s) {
  return {{"chain", s.chain}, {"iter", s.iter}, {"loglik", s.loglik},
          {"dM", s.d_m},      {"dH", s.d_h},    {"theta", matrix_to_json(s.theta)}};
}

std::string format_real(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  return json::parse(in);
}

}  // namespace admixtope::harness
