#include "admixtope/harness/commands.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "admixtope/constructions.hpp"
#include "admixtope/divergence.hpp"
#include "admixtope/harness/json_io.hpp"
#include "admixtope/harness/run_record.hpp"
#include "admixtope/harness/suites.hpp"
#include "admixtope/metrics.hpp"
#include "admixtope/parallel.hpp"
#include "admixtope/stats.hpp"
#include "admixtope/volume.hpp"

namespace admixtope::harness {

using nlohmann::json;

namespace {

struct Job {
  int m, n, rep;
};

std::vector<Job> grid_jobs(const ExperimentConfig& c) {
  std::vector<Job> jobs;
  for (const auto& cell : c.grid)
    for (int r = 0; r < c.replicates; ++r) jobs.push_back({cell.m, cell.n, r});
  return jobs;
}

const char* variant_name(RateVariant v) { return v == RateVariant::Overfitted ? "overfitted" : "parametric"; }

}  // namespace

std::uint64_t cell_seed(std::uint64_t base, int m, int n, int rep) {
  return derive_seed(base, {static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n),
                            static_cast<std::uint64_t>(rep)});
}

CommandResult cmd_simulate(const ExperimentConfig& c, const RunContext& ctx) {
  const auto jobs = grid_jobs(c);
  const auto files = parallel_map(jobs.size(), ctx.threads, [&](std::size_t i) {
    const Job& j = jobs[i];
    const std::uint64_t s = cell_seed(ctx.seed, j.m, j.n, j.rep);
    Rng rng(s);
    const Dataset data = sample_dataset(*c.model, j.m, j.n, rng);
    return to_json(data, s, &*c.model).dump() + "\n";
  });
  std::ostringstream manifest;
  manifest << "file,m,n,replicate,seed\n";
  json rows = json::array();
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& j = jobs[i];
    const std::string name = "datasets/dataset_m" + std::to_string(j.m) + "_n" + std::to_string(j.n) + "_r" +
                             std::to_string(j.rep) + ".json";
    write_text(ctx.out_dir / name, files[i]);
    const std::uint64_t s = cell_seed(ctx.seed, j.m, j.n, j.rep);
    manifest << name << ',' << j.m << ',' << j.n << ',' << j.rep << ',' << s << '\n';
    rows.push_back({{"file", name}, {"m", j.m}, {"n", j.n}, {"replicate", j.rep}, {"seed", s}});
  }
  write_text(ctx.out_dir / "manifest.csv", manifest.str());
  return {kExitOk, {{"datasets", rows}}};
}

CommandResult cmd_posterior(const ExperimentConfig& c, const RunContext& ctx) {
  std::optional<Dataset> data;
  std::uint64_t chain_seed = ctx.seed;
  if (c.dataset_path) {
    data = dataset_from_json(read_json(*c.dataset_path));
  } else {
    const GridCell cell = c.grid.front();
    const std::uint64_t s = cell_seed(ctx.seed, cell.m, cell.n, 0);
    Rng rng(s);
    data = sample_dataset(*c.model, cell.m, cell.n, rng);
    chain_seed = derive_seed(s, {1});
  }
  PosteriorOptions o = c.mcmc;
  o.threads = ctx.threads;
  o.debug_recount = ctx.debug_recount;
  const Polytope* ref = c.model ? &c.model->polytope() : nullptr;
  const PosteriorChain chain = posterior_sample(*data, *c.prior, o, chain_seed, ref);
  std::string lines;
  for (const auto& s : chain.samples) lines += to_json(s).dump() + "\n";
  write_text(ctx.out_dir / "chain.jsonl", lines);
  json summary = {{"samples", chain.samples.size()}, {"iters", chain.iters},   {"burnin", chain.burnin},
                  {"thin", chain.thin},              {"chains", chain.chains}, {"seed", chain.seed},
                  {"loglik_rhat", chain.rhat},       {"rhat_flag", chain.rhat_flag}};
  if (ref && data->m() >= 2 && data->n() >= 2) {
    const RateResult rate = rate_formula(data->m(), data->n(), c.prior->k, c.prior->d, c.alpha, c.variant);
    json stats = json::array();
    for (double C : c.C) {
      const ContractionStat st = contraction_stat(chain, C, rate.delta);
      stats.push_back({{"C", C},
                       {"prob_exceed", st.prob_exceed},
                       {"dM_q", {st.dm_q[0], st.dm_q[1], st.dm_q[2]}},
                       {"dH_q", {st.dh_q[0], st.dh_q[1], st.dh_q[2]}}});
    }
    summary["delta_mn"] = rate.delta;
    summary["contraction"] = stats;
  }
  write_text(ctx.out_dir / "posterior_summary.json", summary.dump(2) + "\n");
  return {kExitOk, summary};
}

CommandResult cmd_verify(const ExperimentConfig& c, const RunContext& ctx) {
  std::string lines;
  std::ostringstream csv;
  csv << "bound_id,instances,passed,pass_rate,literal\n";
  json rows = json::array();
  bool literal_failure = false;
  for (const SuiteConfig& suite : c.suites) {
    const auto instances = build_suite(suite, ctx.seed);
    const BoundBudget budget{c.mc_samples, 1};
    const auto reports = parallel_map(instances.size(), ctx.threads,
                                      [&](std::size_t i) { return run_bound(suite, instances[i], budget); });
    std::size_t passed = 0;
    for (const auto& r : reports) {
      lines += to_json(r).dump() + "\n";
      if (r.pass) ++passed;
      if (r.literal && !r.pass) literal_failure = true;
    }
    const double rate = reports.empty() ? 1.0 : static_cast<double>(passed) / static_cast<double>(reports.size());
    csv << to_string(suite.id) << ',' << reports.size() << ',' << passed << ',' << format_real(rate) << ','
        << (is_literal(suite.id) ? "true" : "false") << '\n';
    rows.push_back({{"bound_id", to_string(suite.id)},
                    {"instances", reports.size()},
                    {"passed", passed},
                    {"pass_rate", rate},
                    {"literal", is_literal(suite.id)}});
  }
  write_text(ctx.out_dir / "bounds.jsonl", lines);
  write_text(ctx.out_dir / "bounds_summary.csv", csv.str());
  return {literal_failure ? kExitBoundFailure : kExitOk, {{"suites", rows}, {"literal_failure", literal_failure}}};
}

namespace {

struct CellOutcome {
  bool ok = true;
  std::string error;
  double delta = 0.0;
  double dm_q50 = 0.0;
  std::vector<double> prob_exceed;
  std::string csv;
};

}  // namespace

CommandResult cmd_sweep(const ExperimentConfig& c, const RunContext& ctx) {
  const auto jobs = grid_jobs(c);
  const AdmixtureModel& truth = *c.model;
  const PriorSpec& prior = *c.prior;
  const auto outcomes = parallel_map(jobs.size(), ctx.threads, [&](std::size_t i) {
    const Job& j = jobs[i];
    CellOutcome out;
    const std::uint64_t s = cell_seed(ctx.seed, j.m, j.n, j.rep);
    try {
      Rng rng(s);
      const Dataset data = sample_dataset(truth, j.m, j.n, rng);
      PosteriorOptions o = c.mcmc;
      o.threads = 1;
      o.debug_recount = ctx.debug_recount;
      const PosteriorChain chain = posterior_sample(data, prior, o, derive_seed(s, {1}), &truth.polytope());
      const RateResult rate = rate_formula(j.m, j.n, prior.k, prior.d, c.alpha, c.variant);
      out.delta = rate.delta;
      std::ostringstream csv;
      for (double C : c.C) {
        const ContractionStat st = contraction_stat(chain, C, rate.delta);
        out.dm_q50 = st.dm_q[1];
        out.prob_exceed.push_back(st.prob_exceed);
        csv << j.m << ',' << j.n << ',' << prior.k << ',' << prior.d << ',' << format_real(c.alpha) << ',' << rate.p
            << ',' << variant_name(c.variant) << ',' << format_real(rate.delta) << ',' << format_real(C) << ','
            << format_real(st.prob_exceed) << ',' << format_real(st.dm_q[0]) << ',' << format_real(st.dm_q[1]) << ','
            << format_real(st.dm_q[2]) << ',' << format_real(st.dh_q[1]) << ',' << format_real(chain.rhat) << ','
            << s << '\n';
      }
      out.csv = csv.str();
    } catch (const std::exception& e) {
      out.ok = false;
      out.error = e.what();
    }
    return out;
  });

  std::string csv = "m,n,k,d,alpha,p,variant,delta_mn,C,prob_exceed,dM_q10,dM_q50,dM_q90,dH_q50,loglik_rhat,seed\n";
  std::string failures = "m,n,replicate,seed,error\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (outcomes[i].ok) {
      csv += outcomes[i].csv;
    } else {
      std::string msg = outcomes[i].error;
      for (auto& ch : msg)
        if (ch == ',' || ch == '\n') ch = ' ';
      failures += std::to_string(jobs[i].m) + ',' + std::to_string(jobs[i].n) + ',' + std::to_string(jobs[i].rep) +
                  ',' + std::to_string(cell_seed(ctx.seed, jobs[i].m, jobs[i].n, jobs[i].rep)) + ',' + msg + '\n';
    }
  }
  write_text(ctx.out_dir / "sweep.csv", csv);
  write_text(ctx.out_dir / "sweep_failures.csv", failures);

  // Seed-averaged statistics per grid cell, in grid order.
  json cells = json::array();
  std::vector<double> deltas, medians;
  std::vector<std::vector<double>> exceed(c.C.size());
  std::size_t failed = 0;
  for (const auto& cell : c.grid) {
    double sum_dm = 0.0;
    std::vector<double> sum_pe(c.C.size(), 0.0);
    int ok = 0;
    double delta = 0.0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].m != cell.m || jobs[i].n != cell.n) continue;
      if (!outcomes[i].ok) continue;
      ++ok;
      delta = outcomes[i].delta;
      sum_dm += outcomes[i].dm_q50;
      for (std::size_t t = 0; t < c.C.size(); ++t) sum_pe[t] += outcomes[i].prob_exceed[t];
    }
    failed += static_cast<std::size_t>(c.replicates - ok);
    if (ok == 0) continue;
    json pe = json::array();
    for (std::size_t t = 0; t < c.C.size(); ++t) {
      pe.push_back(sum_pe[t] / ok);
      exceed[t].push_back(sum_pe[t] / ok);
    }
    deltas.push_back(delta);
    medians.push_back(sum_dm / ok);
    cells.push_back({{"m", cell.m},
                     {"n", cell.n},
                     {"delta_mn", delta},
                     {"replicates_ok", ok},
                     {"mean_dM_q50", sum_dm / ok},
                     {"mean_prob_exceed", pe}});
  }
  bool strictly_decreasing = medians.size() >= 2;
  for (std::size_t i = 1; i < medians.size(); ++i) strictly_decreasing = strictly_decreasing && medians[i] < medians[i - 1];
  json pe_monotone = json::array();
  for (std::size_t t = 0; t < c.C.size(); ++t) {
    bool mono = true;
    for (std::size_t i = 1; i < exceed[t].size(); ++i) mono = mono && exceed[t][i] <= exceed[t][i - 1];
    pe_monotone.push_back({{"C", c.C[t]}, {"nonincreasing", mono}});
  }
  json summary = {{"cells", cells},
                  {"failed_replicates", failed},
                  {"dM_q50_strictly_decreasing", strictly_decreasing},
                  {"prob_exceed_nonincreasing", pe_monotone}};
  bool distinct = false;
  for (double dl : deltas) distinct = distinct || dl != deltas.front();
  summary["slope_log_dM_q50_vs_log_delta"] = distinct && deltas.size() >= 2 ? json(log_log_fit(deltas, medians).slope) : json(nullptr);
  write_text(ctx.out_dir / "sweep_summary.json", summary.dump(2) + "\n");
  return {kExitOk, summary};
}

CommandResult cmd_minimax(const ExperimentConfig& c, const RunContext& ctx) {
  const MinimaxConfig& mc = c.minimax;
  struct Row {
    double eps, dh, vol, vol_se;
    std::size_t nb, nc;
    std::vector<double> v;
    int q;
    bool simplex_case;
  };
  const auto rows = parallel_map(mc.eps.size(), ctx.threads, [&](std::size_t i) {
    const double eps = mc.eps[i];
    const MinimaxPair pair = minimax_pair(mc.k, mc.d, eps);
    Row r{eps, hausdorff(pair.base, pair.chopped), 0.0, 0.0, pair.base.num_extreme(), pair.chopped.num_extreme(),
          {}, pair.q, pair.simplex_case};
    const auto method = pair.q == 2 ? VolumeMethod::Exact2d : VolumeMethod::MonteCarlo;
    const VolumeEstimate vol = sym_diff_volume(pair.base, pair.chopped, method, mc.mc_samples,
                                               derive_seed(ctx.seed, {static_cast<std::uint64_t>(i)}));
    r.vol = vol.value;
    r.vol_se = vol.std_error;
    const auto [m0, m1] = capped_model_pair(pair.base, pair.chopped_vertex, eps);
    for (int n : mc.ns) {
      if (std::pow(mc.d + 1.0, n) > kMaxEnumeratedSequences) {
        r.v.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      r.v.push_back(divergences_exact(m0, m1, n).V);
    }
    return r;
  });
  std::ostringstream csv;
  csv << "eps,dH,vol_symdiff,vol_stderr,vertices_base,vertices_chopped";
  for (int n : mc.ns) csv << ",V_n" << n;
  csv << '\n';
  bool v_monotone = true;
  json table = json::array();
  std::vector<double> eps_list, vols, dhs;
  for (const Row& r : rows) {
    csv << format_real(r.eps) << ',' << format_real(r.dh) << ',' << format_real(r.vol) << ',' << format_real(r.vol_se)
        << ',' << r.nb << ',' << r.nc;
    for (double v : r.v) csv << ',' << format_real(v);
    csv << '\n';
    for (std::size_t t = 1; t < r.v.size(); ++t)
      if (std::isfinite(r.v[t]) && std::isfinite(r.v[t - 1]) && r.v[t] < r.v[t - 1] - 1e-12) v_monotone = false;
    json vs = json::array();
    for (double v : r.v) vs.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    table.push_back({{"eps", r.eps}, {"dH", r.dh}, {"vol_symdiff", r.vol}, {"vol_stderr", r.vol_se},
                     {"vertices_base", r.nb}, {"vertices_chopped", r.nc}, {"V", vs}});
    if (r.vol > 0.0) {
      eps_list.push_back(r.eps);
      vols.push_back(r.vol);
      dhs.push_back(r.dh);
    }
  }
  write_text(ctx.out_dir / "minimax.csv", csv.str());
  json summary = {{"k", mc.k},
                  {"d", mc.d},
                  {"q", rows.empty() ? 0 : rows.front().q},
                  {"simplex_case", rows.empty() || rows.front().simplex_case},
                  {"ns", mc.ns},
                  {"rows", table},
                  {"V_nondecreasing_in_n", v_monotone}};
  if (eps_list.size() >= 2) {
    summary["vol_slope_vs_eps"] = log_log_fit(eps_list, vols).slope;
    summary["dH_slope_vs_eps"] = log_log_fit(eps_list, dhs).slope;
  }
  write_text(ctx.out_dir / "minimax_summary.json", summary.dump(2) + "\n");
  return {kExitOk, summary};
}

CommandResult run_command(const ExperimentConfig& c, const RunContext& ctx) {
  RunRecord rec;
  rec.command = to_string(c.experiment);
  rec.config_hash = config_hash(c.document);
  rec.revision = source_revision();
  rec.base_seed = ctx.seed;
  rec.threads = ctx.threads;
  rec.started = utc_now();
  CommandResult result;
  switch (c.experiment) {
    case Experiment::Simulate: result = cmd_simulate(c, ctx); break;
    case Experiment::Posterior: result = cmd_posterior(c, ctx); break;
    case Experiment::Verify: result = cmd_verify(c, ctx); break;
    case Experiment::Sweep: result = cmd_sweep(c, ctx); break;
    case Experiment::Minimax: result = cmd_minimax(c, ctx); break;
  }
  rec.finished = utc_now();
  rec.rows = result.summary;
  write_run_record(ctx.out_dir, rec);
  return result;
}

}  // namespace admixtope::harness
