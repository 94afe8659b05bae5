#include "critns_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numbers>
#include <thread>

#include "critns/gronwall.hpp"
#include "critns/monitors.hpp"
#include "critns/norms.hpp"
#include "critns/report_json.hpp"
#include "critns/snapshot_io.hpp"
#include "critns/solver.hpp"

namespace critns::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

ordered_json header(const Config& cfg, const std::string& kind) {
  return {{"format_version", kFormatVersion},
          {"config_hash", cfg.hash()},
          {"kind", kind},
          {"config", ordered_json::parse(cfg.tree().dump())}};
}

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json energy_json(const monitors::EnergyCheck& e) {
  return {{"initial_energy", e.initial_energy},
          {"max_defect", e.max_defect},
          {"max_abs_defect", e.max_abs_defect},
          {"max_relative_defect", e.max_relative_defect},
          {"span", e.span},
          {"holds", e.holds}};
}

}  // namespace

int resolve_threads(std::optional<int> flag) {
  int n = 1;
  if (flag) {
    n = *flag;
  } else if (const char* env = std::getenv("CRITNS_THREADS")) {
    n = std::atoi(env);
  }
  return std::max(n, 1);
}

Grid grid_from(const Config& cfg) {
  const long long n = cfg.integer("grid.n");
  const double l = cfg.has("grid.l") ? parse_length(cfg.text("grid.l")) : 2.0 * std::numbers::pi;
  if (n < 4) throw InvalidArgument("config key 'grid.n': must be at least 4");
  return Grid(static_cast<std::size_t>(n), l);
}

datagen::DataFamilySpec datum_spec_from(const Config& cfg, const Options& opt) {
  datagen::DataFamilySpec s;
  s.family = datagen::parse_family(cfg.text("datum.family"));
  s.amplitude = cfg.number("datum.amplitude", s.amplitude);
  s.eps = cfg.number("datum.eps", s.eps);
  s.slope = cfg.number("datum.slope", s.slope);
  s.k_max = static_cast<int>(cfg.integer("datum.k_max", s.k_max));
  s.seed = static_cast<std::uint64_t>(cfg.integer("datum.seed", 0));
  if (opt.seed) s.seed = *opt.seed;
  return s;
}

SpectralVectorField datum_from(const Config& cfg, const Options& opt) {
  if (cfg.has("datum.file")) return read_velocity_snapshot(cfg.text("datum.file"));
  return datagen::make_datum(grid_from(cfg), datum_spec_from(cfg, opt));
}

cert::CertifierConfig certifier_from(const Config& cfg) {
  cert::CertifierConfig c;
  c.gamma = cfg.number("certifier.gamma", c.gamma);
  c.t_grid.t_min = cfg.number("certifier.t_min", c.t_grid.t_min);
  c.t_grid.t_max = cfg.number("certifier.t_max", c.t_grid.t_max);
  c.t_grid.per_decade = static_cast<int>(cfg.integer("certifier.per_decade", c.t_grid.per_decade));
  c.horizon_tstar = cfg.number("certifier.horizon_tstar", c.horizon_tstar);
  c.practical_threshold = cfg.number("certifier.practical_threshold", c.practical_threshold);
  c.quadrature_order = static_cast<int>(cfg.integer("certifier.quadrature_order", c.quadrature_order));
  c.quadrature_panels_per_decade =
      static_cast<int>(cfg.integer("certifier.panels_per_decade", c.quadrature_panels_per_decade));
  c.critical_context = cfg.flag("certifier.critical_context", c.critical_context);
  c.validate();
  return c;
}

// ------------------------------------------------------------------ certify

int cmd_certify(const Config& cfg, const Options& opt) {
  const SpectralVectorField u0 = datum_from(cfg, opt);
  const cert::CertifierConfig cc = certifier_from(cfg);
  const cert::CertificateReport report = cert::certify(u0, cc);
  ordered_json j = header(cfg, "certificate");
  j["certifier"] = cc.to_json();
  j["report"] = cert::to_json(report);
  if (cfg.has("certifier.cg_c0")) {
    j["cg_smallness"] = cert::to_json(cert::cg_nonlinear_smallness(u0, cfg.number("certifier.cg_c0"), cc.t_grid));
  }
  fs::create_directories(opt.out);
  write_json(opt.out / "certificate.json", j);
  std::cout << "condition lhs " << csv_number(report.lhs_total) << ", practical gate "
            << (report.passes_practical ? "pass" : "fail") << '\n';
  return report.passes_practical ? kExitPass : kExitHypothesisFail;
}

// ----------------------------------------------------------------- simulate

int cmd_simulate(const Config& cfg, const Options& opt) {
  const bool restart = cfg.has("simulation.restart");
  const SpectralVectorField u0 =
      restart ? read_velocity_snapshot(cfg.text("simulation.restart")) : datum_from(cfg, opt);
  solver::RunConfig rc;
  rc.dt = cfg.number("simulation.dt");
  rc.t_end = cfg.number("simulation.t_end");
  rc.t_start = cfg.number("simulation.t_start", 0.0);
  rc.scheme = solver::parse_scheme(cfg.text("simulation.scheme", "imex_if_rk4"));
  rc.cadence = static_cast<int>(cfg.integer("simulation.cadence", rc.cadence));
  rc.tail_limit = cfg.number("simulation.tail_limit", rc.tail_limit);
  rc.validate();
  const int snapshot_every = static_cast<int>(cfg.integer("simulation.snapshot_every", 0));

  fs::create_directories(opt.out);
  if (snapshot_every > 0) fs::create_directories(opt.out / "snapshots");

  monitors::TrajectoryMonitor mon(u0, rc.t_start);
  int observation = 0;
  auto observe = [&](double t, const SpectralVectorField& u, const solver::EnergySample& e) {
    mon.observe(t, u, e);
    if (snapshot_every > 0 && observation % snapshot_every == 0) {
      char name[32];
      std::snprintf(name, sizeof name, "u_%06d.cnsf", observation);
      write_snapshot(opt.out / "snapshots" / name, u);
    }
    ++observation;
  };

  SpectralVectorField final_state = u0;
  std::string status = "complete";
  double final_time = rc.t_start;
  int steps = 0;
  double max_defect = 0.0;
  std::vector<solver::EnergySample> energy;

  if (rc.scheme == solver::Scheme::mild_picard) {
    if (rc.t_start != 0.0) throw InvalidArgument("config key 'simulation.t_start': the Picard route starts at 0");
    const int depth = static_cast<int>(cfg.integer("simulation.picard_depth"));
    const solver::PicardResult pr = solver::picard_mild(u0, rc.t_end, depth, rc.dt, rc.cadence);
    const auto& states = pr.iterates.back();
    const std::vector<double>& kept = pr.times;
    double dissipation = 0.0, prev_grad = 0.0;
    const double e0 = std::pow(norms::sobolev(u0, 0.0), 2);
    for (std::size_t i = 0; i < states.size(); ++i) {
      const double g = std::pow(norms::sobolev(states[i], 1.0), 2);
      if (i > 0) dissipation += 0.5 * (kept[i] - kept[i - 1]) * (g + prev_grad);
      prev_grad = g;
      solver::EnergySample s;
      s.time = kept[i];
      s.energy = std::pow(norms::sobolev(states[i], 0.0), 2);
      s.dissipation = dissipation;
      s.defect = s.energy + 2.0 * dissipation - e0;
      energy.push_back(s);
      observe(kept[i], states[i], s);
    }
    final_state = states.back();
    final_time = kept.back();
    steps = std::max(1, static_cast<int>(std::llround(rc.t_end / rc.dt)));
    if (pr.diverged) status = "picard iterates diverged";
  } else {
    solver::RunResult r = solver::run_imex(u0, rc, observe);
    final_state = r.final_state;
    final_time = r.final_time;
    steps = r.steps_taken;
    status = r.status;
    max_defect = r.max_solenoidal_defect;
    energy = std::move(r.energy);
  }
  write_snapshot(opt.out / "final.cnsf", final_state);

  {
    std::ofstream jl(opt.out / "diagnostics.jsonl");
    ordered_json h = header(cfg, "diagnostics");
    h["tags"] = mon.tags();
    jl << h.dump() << '\n';
    for (std::size_t i = 0; i < mon.times().size(); ++i) jl << mon.record(i).dump() << '\n';
  }

  const auto d = norms::DyadicDecomposition::covering(u0.grid());
  const double b032 = u0.is_mean_free() ? norms::besov_0_3_2(u0, d) : 0.0;
  const double c_cal = cfg.number("simulation.c_cal", 1.0);
  const double window_end = cfg.number("simulation.bootstrap_window_end", rc.t_end);
  const auto energy_check = monitors::monitor_energy(energy, cfg.number("simulation.energy_tolerance", 1e-5));
  const auto heat_convolution = mon.heat_convolution();
  const auto boot = mon.bootstrap(window_end);
  const auto h1 = mon.h1_energy(c_cal, b032);
  const auto gn = mon.gn_constants();
  const auto half = monitors::h_half_at(final_state);

  ordered_json s = header(cfg, "simulation_summary");
  s["status"] = status;
  s["final_time"] = final_time;
  s["steps"] = steps;
  s["max_solenoidal_defect"] = max_defect;
  s["energy"] = energy_json(energy_check);
  s["heat_convolution_max_ratio"] = json_number(heat_convolution.max_ratio);
  s["bootstrap"] = {{"lhs", boot.lhs}, {"rhs", boot.rhs}, {"margin", boot.margin},
                    {"holds", boot.holds}, {"window", boot.window}};
  s["h1_energy"] = {{"c_cal", c_cal},
                    {"besov_0_3_2_u0", b032},
                    {"max_ratio", json_number(h1.max_ratio)},
                    {"calibrated_c", json_number(mon.calibrate_h1(b032))}};
  s["gagliardo_nirenberg"] = {{"c_two_factor", gn.c_two_factor}, {"c_three_factor", gn.c_three_factor},
                              {"samples", gn.samples}};
  const double tstar = cfg.number("simulation.pigeonhole_tstar", final_time);
  try {
    const auto p = monitors::pigeonhole_scan(mon.series("u_h1sq"), tstar, norms::sobolev(u0, 0.0));
    s["pigeonhole"] = {{"tstar", tstar},
                       {"t0star", p.t0star},
                       {"value", p.value},
                       {"mean", p.mean},
                       {"linear_bound", p.linear_bound},
                       {"energy_bound", p.energy_bound},
                       {"holds_linear", p.holds_linear},
                       {"holds_energy", p.holds_energy}};
  } catch (const InvalidArgument& e) {
    s["pigeonhole"] = {{"tstar", tstar}, {"skipped", e.what()}};
  }
  s["h_half_final"] = {{"h_half_squared", half.h_half_squared}, {"h1", half.h1}, {"l2", half.l2},
                       {"holds", half.holds}};
  write_json(opt.out / "summary.json", s);
  std::cout << "simulate: " << status << " at t = " << final_time << ", energy defect "
            << csv_number(energy_check.max_defect) << '\n';
  return kExitPass;
}

// ----------------------------------------------------------------- gronwall

int cmd_gronwall(const Config& cfg, const Options& opt) {
  nlohmann::json problems = nlohmann::json::array();
  if (cfg.has("gronwall.problems")) {
    const fs::path path = cfg.text("gronwall.problems");
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open gronwall problem list '" + path.string() + "'");
    try {
      problems = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidArgument("gronwall problem list: " + std::string(e.what()));
    }
    if (!problems.is_array()) throw InvalidArgument("gronwall problem list must be a JSON array");
  } else {
    nlohmann::json p{{"a0", cfg.number("gronwall.a0")},
                     {"c1", cfg.number("gronwall.c1")},
                     {"c2", cfg.number("gronwall.c2")},
                     {"regime", cfg.text("gronwall.regime")},
                     {"horizon", cfg.number("gronwall.horizon")}};
    if (cfg.has("gronwall.intervals")) p["intervals"] = cfg.integer("gronwall.intervals");
    if (cfg.has("gronwall.grading")) p["grading"] = cfg.number("gronwall.grading");
    if (cfg.has("gronwall.frozen_eps")) p["frozen_eps"] = cfg.number("gronwall.frozen_eps");
    problems.push_back(p);
  }
  const double surrogate_t0 = cfg.number("gronwall.surrogate_t0", 0.05);

  fs::create_directories(opt.out);
  ordered_json report = header(cfg, "gronwall");
  report["results"] = ordered_json::array();
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const gronwall::GronwallProblem p = gronwall::problem_from_json(problems[i]);
    const gronwall::GronwallSolution sol = gronwall::solve_extremal(p);
    const gronwall::BoundReport lr = gronwall::verify_extremal_bound(sol, p, surrogate_t0);
    std::ofstream csv(opt.out / ("gronwall_" + std::to_string(i) + ".csv"));
    csv << "# format_version=" << kFormatVersion << " config_hash=" << cfg.hash() << '\n' << "t,A\n";
    for (std::size_t k = 0; k < sol.times.size(); ++k) {
      csv << csv_number(sol.times[k]) << ',' << csv_number(sol.a_values[k]) << '\n';
    }
    const char* status = sol.status == gronwall::Status::converged       ? "converged"
                         : sol.status == gronwall::Status::not_converged ? "not_converged"
                                                                         : "overflow";
    report["results"].push_back({{"problem", gronwall::to_json(p)},
                                 {"status", status},
                                 {"picard_iterations", sol.picard_iterations},
                                 {"last_update", json_number(sol.last_update)},
                                 {"residual", json_number(sol.residual)},
                                 {"sup", json_number(sol.sup())},
                                 {"verification", gronwall::to_json(lr)}});
  }
  write_json(opt.out / "gronwall_report.json", report);
  std::cout << "gronwall: " << problems.size() << " problem(s) solved\n";
  return kExitPass;
}

// -------------------------------------------------------------------- sweep

std::vector<SweepRow> run_sweep(const Config& cfg, const Options& opt) {
  const std::string axis = cfg.text("sweep.axis");
  if (axis != "amplitude" && axis != "eps") {
    throw InvalidArgument("config key 'sweep.axis': expected 'amplitude' or 'eps', got '" + axis + "'");
  }
  const std::vector<double> values = cfg.numbers("sweep.values");
  std::vector<SweepRow> rows(values.size());
  if (values.empty()) return rows;

  const Grid grid = grid_from(cfg);
  const datagen::DataFamilySpec base = datum_spec_from(cfg, opt);
  cert::CertifierConfig cc = certifier_from(cfg);
  cc.critical_context = false;
  const double c0 = cfg.number("sweep.cg_c0", 1.0);

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        datagen::DataFamilySpec spec = base;
        (axis == "amplitude" ? spec.amplitude : spec.eps) = values[i];
        const SpectralVectorField u0 = datagen::make_datum(grid, spec);
        const cert::CertificateReport r = cert::certify(u0, cc);
        const cert::CgSmallness cg = cert::cg_nonlinear_smallness(u0, c0, cc.t_grid);
        SweepRow& row = rows[i];
        row.member = static_cast<int>(i);
        row.axis_value = values[i];
        row.besov_m1_inf_inf = norms::besov_m1_inf_inf(u0).value;
        row.condition_lhs = r.lhs_total;
        row.sup_term = r.sup_term;
        row.l2l2_term = r.l2l2_term;
        row.cg_lhs = cg.lhs;
        row.cg_rhs = cg.rhs;
        row.cg_ratio = cg.ratio;
        row.passes_practical = r.passes_practical;
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int n_threads = std::min<int>(opt.threads, static_cast<int>(values.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& hash) {
  out << "# format_version=" << kFormatVersion << " config_hash=" << hash << '\n';
  out << "member,axis_value,besov_m1_inf_inf,condition_lhs,sup_term,l2l2_term,cg_lhs,cg_rhs,cg_ratio,"
         "passes_practical\n";
  for (const auto& r : rows) {
    out << r.member << ',' << csv_number(r.axis_value) << ',' << csv_number(r.besov_m1_inf_inf) << ','
        << csv_number(r.condition_lhs) << ',' << csv_number(r.sup_term) << ',' << csv_number(r.l2l2_term) << ','
        << csv_number(r.cg_lhs) << ',' << csv_number(r.cg_rhs) << ',' << csv_number(r.cg_ratio) << ','
        << (r.passes_practical ? 1 : 0) << '\n';
  }
}

int cmd_sweep(const Config& cfg, const Options& opt) {
  const auto rows = run_sweep(cfg, opt);
  fs::create_directories(opt.out);
  std::ofstream csv(opt.out / "sweep.csv");
  write_sweep_csv(csv, rows, cfg.hash());
  std::cout << "sweep: " << rows.size() << " member(s)\n";
  return kExitPass;
}

// -------------------------------------------------------------------- norms

int cmd_norms(const fs::path& snapshot, const Options& opt, std::ostream& out) {
  const SpectralVectorField u = read_velocity_snapshot(snapshot);
  ordered_json j{{"format_version", kFormatVersion},
                 {"convention_version", norms::kConventionVersion},
                 {"kind", "norms"},
                 {"file", snapshot.string()},
                 {"grid_n", u.grid().n()},
                 {"grid_l", u.grid().period()}};
  ordered_json v;
  v["l2"] = norms::sobolev(u, 0.0);
  v["h_half"] = norms::sobolev(u, 0.5);
  v["h1"] = norms::sobolev(u, 1.0);
  v["linf"] = norms::lebesgue(u, std::numeric_limits<double>::infinity());
  v["l3"] = norms::lebesgue(u, 3.0);
  v["w13"] = norms::w13_seminorm(u);
  v["solenoidal_defect"] = u.solenoidal_defect();
  if (u.is_mean_free()) {
    const auto d = norms::DyadicDecomposition::covering(u.grid());
    v["hm1"] = norms::sobolev(u, -1.0);
    v["besov_m1_inf_inf"] = norms::besov_m1_inf_inf(u).value;
    v["besov_0_3_2"] = norms::besov_0_3_2(u, d);
    v["besov_m1_inf_2"] = norms::besov_m1_inf_2(u, d);
  }
  j["norms"] = v;
  j["config_hash"] = config_hash(nlohmann::json{{"command", "norms"}, {"file", snapshot.string()}});
  out << j.dump(2) << '\n';
  if (!opt.out.empty()) {
    fs::create_directories(opt.out);
    write_json(opt.out / "norms.json", j);
  }
  return kExitPass;
}

}  // namespace critns::cli
