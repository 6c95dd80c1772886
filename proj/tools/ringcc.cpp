// ringcc: ring central configurations from the command line.
//
// Subcommands: sums, libration, omega, simulate, figures. Every subcommand
// reads an optional flat key = value file via --config; flags given on the
// command line take precedence over values from the file.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 numerical failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ringcc/dynamics.hpp"
#include "ringcc/equilibrium.hpp"
#include "ringcc/errors.hpp"
#include "ringcc/io/csv.hpp"
#include "ringcc/io/run_config.hpp"
#include "ringcc/libration.hpp"
#include "ringcc/parallel.hpp"
#include "ringcc/ring_sums.hpp"
#include "ringcc/two_ring.hpp"

namespace {

using ringcc::io::ConfigError;
using ringcc::io::format_double;
using ringcc::io::format_optional;
using ringcc::io::RunConfig;
using ringcc::io::write_row;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

constexpr std::int64_t kMaxRingCount = 1'000'000'000'000'000;

/// A command-line failure that maps to a specific exit code.
struct ExitRequest {
  int code;
  std::string message;
};

/// Links a config-file key to the variable behind a command-line option.
struct Binding {
  std::string key;
  CLI::Option* option;  // nullptr for keys that exist only in config files
  std::function<void(const RunConfig&)> apply;
};

struct Command {
  CLI::App* app = nullptr;
  std::string config_path;
  std::vector<Binding> bindings;
  std::function<int()> run;

  void bind(std::string key, CLI::Option* option, std::function<void(const RunConfig&)> apply) {
    bindings.push_back({std::move(key), option, std::move(apply)});
  }

  void apply_config() {
    if (config_path.empty()) return;
    std::set<std::string> allowed;
    for (const auto& b : bindings) allowed.insert(b.key);
    const auto cfg = RunConfig::load(config_path, allowed);
    for (const auto& b : bindings) {
      if (!cfg.has(b.key)) continue;
      if (b.option != nullptr && b.option->count() > 0) continue;
      b.apply(cfg);
    }
  }
};

std::vector<std::int64_t> parse_int_list(const std::string& key, const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream one(item);
    double v = 0.0;
    if (!(one >> v) || !(one >> std::ws).eof() || v != std::floor(v) || v < 2.0 ||
        v > static_cast<double>(kMaxRingCount))
      throw ConfigError("'" + key + "': '" + item + "' is not a ring size >= 2");
    out.push_back(static_cast<std::int64_t>(v));
  }
  if (out.empty()) throw ConfigError("'" + key + "' is empty");
  return out;
}

std::string require_member(const std::string& key, const std::string& value, const std::set<std::string>& allowed) {
  if (!allowed.contains(value)) throw ConfigError("'" + key + "' = '" + value + "' is not a recognised value");
  return value;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

std::string csv_text(const std::string& message) {
  std::string s = message;
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  return s;
}

// sums ----------------------------------------------------------------------

constexpr std::int64_t kCoefficientTableCounts[] = {10, 20, 50, 100, 200, 1250, 2500, 5000, 10000, 20000};

void add_sums(CLI::App& app, Command& cmd) {
  struct Params {
    std::vector<std::int64_t> ns;
    bool table4 = false;
    unsigned threads = 1;
    std::int64_t threshold = ringcc::kDefaultAsymptoticThreshold;
    std::string output;
  };
  auto p = std::make_shared<Params>();
  auto* sub = app.add_subcommand("sums", "Ring sums, their asymptotic forms and the alpha coefficients");
  cmd.app = sub;
  sub->add_option("--config", cmd.config_path, "key = value file");
  auto* o_n = sub->add_option("-N,--n-particles", p->ns, "ring sizes")->check(CLI::Range(std::int64_t{2}, kMaxRingCount));
  auto* o_t4 = sub->add_flag("--table4", p->table4, "emit the ring sizes of the coefficient table");
  auto* o_th = sub->add_option("--threads", p->threads, "worker threads")->check(CLI::Range(1u, 256u));
  auto* o_as = sub->add_option("--asymptotic-threshold", p->threshold, "N at which sums switch to asymptotic forms")
                   ->check(CLI::Range(std::int64_t{2}, std::numeric_limits<std::int64_t>::max()));
  auto* o_out = sub->add_option("-o,--output", p->output, "output file (default stdout)");

  cmd.bind("N", o_n, [p](const RunConfig& c) { p->ns = parse_int_list("N", c.get_string("N")); });
  cmd.bind("table4", o_t4, [p](const RunConfig& c) { p->table4 = c.get_bool("table4", false); });
  cmd.bind("threads", o_th, [p](const RunConfig& c) { p->threads = static_cast<unsigned>(c.get_int("threads", 1, 1, 256)); });
  cmd.bind("asymptotic_threshold", o_as, [p](const RunConfig& c) {
    p->threshold = c.get_int("asymptotic_threshold", p->threshold, 2, std::numeric_limits<std::int64_t>::max());
  });
  cmd.bind("output", o_out, [p](const RunConfig& c) { p->output = c.get_string("output"); });

  cmd.run = [p]() {
    std::vector<std::int64_t> ns = p->ns;
    if (p->table4) ns.insert(ns.end(), std::begin(kCoefficientTableCounts), std::end(kCoefficientTableCounts));
    if (ns.empty()) throw ExitRequest{kExitUsage, "sums: give -N or --table4"};
    const ringcc::SumOptions opts{p->threshold};
    const auto rows = ringcc::parallel_map(ns.size(), p->threads, [&](std::size_t i) {
      const auto n = ns[i];
      std::vector<std::string> row{std::to_string(n),
                                   format_double(ringcc::csc_sum(n, opts)),
                                   format_double(ringcc::csc3_sum(n, opts)),
                                   format_double(ringcc::csc_sum_asymptotic(n)),
                                   format_double(ringcc::alpha(n, opts)),
                                   n % 2 == 0 ? format_double(ringcc::alpha_prime(n, opts)) : std::string(),
                                   n % 2 == 0 ? format_double(ringcc::alpha_prime<float>(n)) : std::string(),
                                   format_double(ringcc::alpha_tabulated(n, opts))};
      return row;
    });
    std::ostringstream out;
    write_row(out, {"N", "csc_sum", "csc3_sum", "csc_sum_asymptotic", "alpha", "alpha_prime", "alpha_prime_float32",
                     "alpha_tabulated"});
    for (const auto& r : rows) write_row(out, r);
    emit(p->output, out.str());
    return kExitOk;
  };
}

// libration ----------------------------------------------------------------

void add_libration(CLI::App& app, Command& cmd) {
  struct Params {
    std::int64_t n = 50;
    double ratio = 1e-3;
    std::string branch = "both";
    std::string method = "full";
    bool table2 = false;
    bool table3 = false;
    unsigned threads = 1;
    std::string output;
  };
  auto p = std::make_shared<Params>();
  auto* sub = app.add_subcommand("libration", "Collinear libration points of a ring");
  cmd.app = sub;
  sub->add_option("--config", cmd.config_path, "key = value file");
  auto* o_n = sub->add_option("-N,--n-particles", p->n, "ring size")->check(CLI::Range(std::int64_t{2}, kMaxRingCount));
  auto* o_r = sub->add_option("--ratio", p->ratio, "total ring mass over central mass, N m / M")
                  ->check(CLI::Range(0.0, 1e12));
  auto* o_b = sub->add_option("--branch", p->branch, "inner, outer or both")
                  ->check(CLI::IsMember({"inner", "outer", "both"}));
  auto* o_m = sub->add_option("--method", p->method, "full, quintic, cubic or asymptotic")
                  ->check(CLI::IsMember({"full", "quintic", "cubic", "asymptotic"}));
  auto* o_t2 = sub->add_flag("--table2", p->table2, "inner points on the published grid");
  auto* o_t3 = sub->add_flag("--table3", p->table3, "outer points on the published grid");
  auto* o_th = sub->add_option("--threads", p->threads, "worker threads")->check(CLI::Range(1u, 256u));
  auto* o_out = sub->add_option("-o,--output", p->output, "output file (default stdout)");

  cmd.bind("N", o_n, [p](const RunConfig& c) { p->n = c.get_int("N", p->n, 2, kMaxRingCount); });
  cmd.bind("ratio", o_r, [p](const RunConfig& c) { p->ratio = c.get_double("ratio", p->ratio, 0.0, 1e12); });
  cmd.bind("branch", o_b,
           [p](const RunConfig& c) { p->branch = require_member("branch", c.get_string("branch"), {"inner", "outer", "both"}); });
  cmd.bind("method", o_m, [p](const RunConfig& c) {
    p->method = require_member("method", c.get_string("method"), {"full", "quintic", "cubic", "asymptotic"});
  });
  cmd.bind("table2", o_t2, [p](const RunConfig& c) { p->table2 = c.get_bool("table2", false); });
  cmd.bind("table3", o_t3, [p](const RunConfig& c) { p->table3 = c.get_bool("table3", false); });
  cmd.bind("threads", o_th, [p](const RunConfig& c) { p->threads = static_cast<unsigned>(c.get_int("threads", 1, 1, 256)); });
  cmd.bind("output", o_out, [p](const RunConfig& c) { p->output = c.get_string("output"); });

  cmd.run = [p]() {
    using ringcc::LibrationBranch;
    std::ostringstream out;
    write_row(out, {"N", "mN_over_M", "x_inner", "x_outer", "x0_three_body", "method", "residual", "status"});

    if (p->table2 || p->table3) {
      if (p->table2 && p->table3) throw ExitRequest{kExitUsage, "libration: choose one of --table2 and --table3"};
      const auto ratios = p->table2 ? std::span<const double>(ringcc::kTableInnerRatios)
                                    : std::span<const double>(ringcc::kTableOuterRatios);
      const auto branch = p->table2 ? LibrationBranch::Inner : LibrationBranch::Outer;
      const auto rows = ringcc::sweep_tables(ringcc::kTableRingCounts, ratios, {}, p->threads);
      for (const auto& row : rows) {
        const auto& hit = branch == LibrationBranch::Inner ? row.inner : row.outer;
        const std::optional<double> x = hit ? std::optional<double>(hit->x_over_r) : std::nullopt;
        write_row(out, {std::to_string(row.n), format_double(row.ring_mass_ratio),
                        branch == LibrationBranch::Inner ? format_optional(x) : std::string(),
                        branch == LibrationBranch::Outer ? format_optional(x) : std::string(),
                        format_double(row.x0_three_body), "full", hit ? format_double(hit->residual) : std::string(),
                        hit ? (hit->converged ? "ok" : "unconverged") : "absent"});
      }
      emit(p->output, out.str());
      return kExitOk;
    }

    const auto sys = ringcc::normalized_system(p->n, p->ratio);
    auto solve = [&](LibrationBranch b) -> std::optional<ringcc::LibrationResult> {
      if (p->method == "full") return ringcc::solve_full(sys, b);
      if (p->method == "quintic") return ringcc::solve_quintic_branch(sys, b);
      if (p->method == "cubic") return ringcc::approx_cubic(sys, b);
      return ringcc::asymptotic_roots(sys, ringcc::AsymptoticLimit::SmallMass, b);
    };
    std::optional<ringcc::LibrationResult> inner;
    std::optional<ringcc::LibrationResult> outer;
    const bool want_inner = p->branch != "outer";
    const bool want_outer = p->branch != "inner";
    if (sys.particle_mass > 0.0) {
      if (want_inner) inner = solve(LibrationBranch::Inner);
      if (want_outer) outer = solve(LibrationBranch::Outer);
    }
    auto usable = [](const std::optional<ringcc::LibrationResult>& r) { return r && r->converged; };
    std::string status = "ok";
    if ((want_inner && !usable(inner)) && (want_outer && !usable(outer))) status = "absent";
    else if (want_inner && !usable(inner)) status = p->branch == "both" ? "inner_absent" : "absent";
    else if (want_outer && !usable(outer)) status = p->branch == "both" ? "outer_absent" : "absent";
    if (status != "ok" && ((inner && !inner->converged) || (outer && !outer->converged))) status = "unconverged";

    double residual = 0.0;
    for (const auto* r : {&inner, &outer})
      if (usable(*r)) residual = std::max(residual, std::abs((*r)->residual));
    auto x_of = [&](const std::optional<ringcc::LibrationResult>& r) {
      return usable(r) ? format_double(r->x_over_r) : std::string();
    };
    write_row(out, {std::to_string(p->n), format_double(p->ratio), x_of(inner), x_of(outer),
                    sys.particle_mass > 0.0 ? format_double(ringcc::three_body_collinear(sys.particle_mass))
                                            : std::string(),
                    p->method, usable(inner) || usable(outer) ? format_double(residual) : std::string(), status});
    for (const auto* r : {&inner, &outer})
      if (*r && !(*r)->note.empty()) std::cerr << "note: " << (*r)->note << '\n';
    emit(p->output, out.str());
    return status == "ok" ? kExitOk : kExitNumerical;
  };
}

// omega ---------------------------------------------------------------------

void add_omega(CLI::App& app, Command& cmd) {
  struct Params {
    std::vector<std::int64_t> ns{100, 10'000, 1'000'000, 1'000'000'000, 1'000'000'000'000};
    double fraction = 0.01;
    std::int64_t threshold = ringcc::kDefaultAsymptoticThreshold;
    std::string output;
  };
  auto p = std::make_shared<Params>();
  auto* sub = app.add_subcommand("omega", "Rigid rotation rate against ring size at fixed ring mass");
  cmd.app = sub;
  sub->add_option("--config", cmd.config_path, "key = value file");
  auto* o_n = sub->add_option("-N,--n-particles", p->ns, "ring sizes")->check(CLI::Range(std::int64_t{2}, kMaxRingCount));
  auto* o_f = sub->add_option("--fraction", p->fraction, "total ring mass over central mass")->check(CLI::Range(0.0, 1e12));
  auto* o_as = sub->add_option("--asymptotic-threshold", p->threshold, "N at which sums switch to asymptotic forms")
                   ->check(CLI::Range(std::int64_t{2}, std::numeric_limits<std::int64_t>::max()));
  auto* o_out = sub->add_option("-o,--output", p->output, "output file (default stdout)");

  cmd.bind("N", o_n, [p](const RunConfig& c) { p->ns = parse_int_list("N", c.get_string("N")); });
  cmd.bind("fraction", o_f, [p](const RunConfig& c) { p->fraction = c.get_double("fraction", p->fraction, 0.0, 1e12); });
  cmd.bind("asymptotic_threshold", o_as, [p](const RunConfig& c) {
    p->threshold = c.get_int("asymptotic_threshold", p->threshold, 2, std::numeric_limits<std::int64_t>::max());
  });
  cmd.bind("output", o_out, [p](const RunConfig& c) { p->output = c.get_string("output"); });

  cmd.run = [p]() {
    const auto rows = ringcc::omega_ratio_sweep(p->ns, p->fraction, ringcc::SumOptions{p->threshold});
    std::ostringstream out;
    write_row(out, {"N", "mass_fraction", "omega_ratio"});
    for (const auto& r : rows)
      write_row(out, {std::to_string(r.n), format_double(r.ring_mass_fraction), format_double(r.omega_ratio)});
    emit(p->output, out.str());
    return kExitOk;
  };
}

// simulate ------------------------------------------------------------------

void add_simulate(CLI::App& app, Command& cmd) {
  struct Params {
    std::string mode = "inertial";
    std::string system = "ring";
    std::int64_t n = 20;
    double mass_ratio = 1e-3;
    double outer_radius = 1.5;
    std::optional<double> outer_mass_ratio;
    std::string arrangement = "collinear";
    std::string omega_policy = "outer";
    std::string method = "rk4";
    double steps_per_period = 4096;
    double periods = 1.0;
    std::int64_t record_every = 64;
    double x0 = 1e-4;
    double phi0 = 1.0;  // in units of pi / N
    std::string frame = "stationary";
    bool measure = true;
    std::string trajectory = "trajectory.csv";
    std::string diagnostics = "diagnostics.csv";
  };
  auto p = std::make_shared<Params>();
  auto* sub = app.add_subcommand("simulate", "Integrate a ring or a test particle and write CSV output");
  cmd.app = sub;
  sub->add_option("--config,config", cmd.config_path, "key = value file")->required();
  auto* o_mode = sub->add_option("--mode", p->mode, "inertial or rotating")->check(CLI::IsMember({"inertial", "rotating"}));
  auto* o_n = sub->add_option("-N,--n-particles", p->n, "particles per ring")->check(CLI::Range(std::int64_t{2}, std::int64_t{100000}));
  auto* o_mr = sub->add_option("--mass-ratio", p->mass_ratio, "ring mass over central mass, N m / M")->check(CLI::Range(0.0, 1e6));
  auto* o_me = sub->add_option("--method", p->method, "rk4 or leapfrog")->check(CLI::IsMember({"rk4", "leapfrog"}));
  auto* o_sp = sub->add_option("--steps-per-period", p->steps_per_period, "steps per rotation period")->check(CLI::Range(4.0, 1e9));
  auto* o_pe = sub->add_option("--periods", p->periods, "duration in rotation periods")->check(CLI::Range(1e-6, 1e6));
  auto* o_re = sub->add_option("--record-every", p->record_every, "steps between recorded rows")->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
  auto* o_tr = sub->add_option("--trajectory", p->trajectory, "trajectory CSV path");
  auto* o_di = sub->add_option("--diagnostics", p->diagnostics, "diagnostics CSV path");

  cmd.bind("mode", o_mode, [p](const RunConfig& c) { p->mode = require_member("mode", c.get_string("mode"), {"inertial", "rotating"}); });
  cmd.bind("system", nullptr, [p](const RunConfig& c) { p->system = require_member("system", c.get_string("system"), {"ring", "two_ring"}); });
  cmd.bind("N", o_n, [p](const RunConfig& c) { p->n = c.get_int("N", p->n, 2, 100000); });
  cmd.bind("mass_ratio", o_mr, [p](const RunConfig& c) { p->mass_ratio = c.get_double("mass_ratio", p->mass_ratio, 0.0, 1e6); });
  cmd.bind("outer_radius", nullptr, [p](const RunConfig& c) { p->outer_radius = c.get_double("outer_radius", p->outer_radius, 1.0 + 1e-9, 1e6); });
  cmd.bind("outer_mass_ratio", nullptr, [p](const RunConfig& c) { p->outer_mass_ratio = c.get_double("outer_mass_ratio", 0.0, 0.0, 1e6); });
  cmd.bind("arrangement", nullptr, [p](const RunConfig& c) {
    p->arrangement = require_member("arrangement", c.get_string("arrangement"), {"collinear", "noncollinear"});
  });
  cmd.bind("omega_policy", nullptr, [p](const RunConfig& c) {
    p->omega_policy = require_member("omega_policy", c.get_string("omega_policy"), {"outer", "inner", "least_squares"});
  });
  cmd.bind("method", o_me, [p](const RunConfig& c) { p->method = require_member("method", c.get_string("method"), {"rk4", "leapfrog"}); });
  cmd.bind("steps_per_period", o_sp, [p](const RunConfig& c) { p->steps_per_period = c.get_double("steps_per_period", 4096, 4.0, 1e9); });
  cmd.bind("periods", o_pe, [p](const RunConfig& c) { p->periods = c.get_double("periods", 1.0, 1e-6, 1e6); });
  cmd.bind("record_every", o_re, [p](const RunConfig& c) { p->record_every = c.get_int("record_every", 64, 1, std::int64_t{1} << 40); });
  cmd.bind("x0", nullptr, [p](const RunConfig& c) { p->x0 = c.get_double("x0", p->x0, -0.9, 0.9); });
  cmd.bind("phi0", nullptr, [p](const RunConfig& c) { p->phi0 = c.get_double("phi0", p->phi0, -1e6, 1e6); });
  cmd.bind("frame", nullptr, [p](const RunConfig& c) { p->frame = require_member("frame", c.get_string("frame"), {"rigid", "stationary"}); });
  cmd.bind("measure_frequency", nullptr, [p](const RunConfig& c) { p->measure = c.get_bool("measure_frequency", true); });
  cmd.bind("trajectory", o_tr, [p](const RunConfig& c) { p->trajectory = c.get_string("trajectory"); });
  cmd.bind("diagnostics", o_di, [p](const RunConfig& c) { p->diagnostics = c.get_string("diagnostics"); });

  cmd.run = [p]() {
    const auto ring = ringcc::normalized_system(p->n, p->mass_ratio);
    auto traj = open_output(p->trajectory);
    auto diag = open_output(p->diagnostics);
    write_row(traj, {"t", "body", "x", "y", "vx", "vy"});
    write_row(diag, {"t", "energy", "ang_momentum", "max_radius_deviation"});
    std::ostringstream summary;
    write_row(summary, {"quantity", "value"});

    auto truncate = [&](const std::exception& e) {
      write_row(traj, {"truncated", csv_text(e.what())});
      write_row(diag, {"truncated", csv_text(e.what())});
      traj.flush();
      diag.flush();
      return ExitRequest{kExitNumerical, std::string("simulation aborted: ") + e.what()};
    };

    if (p->mode == "inertial") {
      ringcc::SimState state;
      double omega = 0.0;
      if (p->system == "ring") {
        state = ringcc::init_central_configuration(ring);
        omega = ringcc::omega_equilibrium(ring).omega;
      } else {
        ringcc::TwoRingSystem two;
        two.n_per_ring = p->n;
        two.inner_mass = ring.particle_mass;
        two.outer_mass = p->outer_mass_ratio ? *p->outer_mass_ratio / static_cast<double>(p->n) : ring.particle_mass;
        two.inner_radius = 1.0;
        two.outer_radius = p->outer_radius;
        two.arrangement = p->arrangement == "collinear" ? ringcc::Arrangement::Collinear : ringcc::Arrangement::Noncollinear;
        two.omega_policy = p->omega_policy == "outer"   ? ringcc::OmegaPolicy::FitOuter
                           : p->omega_policy == "inner" ? ringcc::OmegaPolicy::FitInner
                                                        : ringcc::OmegaPolicy::LeastSquares;
        for (const auto& w : ringcc::warnings(two)) std::cerr << "warning: " << w << '\n';
        std::cerr << "common rotation rate fitted with policy '" << p->omega_policy << "'\n";
        state = ringcc::init_central_configuration(two);
        omega = ringcc::common_omega(two);
      }
      const double period = 2.0 * std::numbers::pi / omega;
      const ringcc::IntegratorConfig config{p->method == "rk4" ? ringcc::Integrator::Rk4 : ringcc::Integrator::Leapfrog,
                                            period / p->steps_per_period, p->periods * period, p->record_every};
      std::optional<ringcc::Diagnostics> first;
      ringcc::Diagnostics last;
      double worst_dev = 0.0;
      try {
        ringcc::integrate_observed(state, config, [&](const ringcc::SimState& s, const ringcc::Diagnostics& d) {
          for (std::size_t i = 0; i < s.size(); ++i)
            write_row(traj, {format_double(s.time), std::to_string(i), format_double(s.pos[i].x), format_double(s.pos[i].y),
                             format_double(s.vel[i].x), format_double(s.vel[i].y)});
          write_row(diag, {format_double(d.time), format_double(d.energy), format_double(d.ang_momentum),
                           format_double(d.max_radius_deviation)});
          if (!first) first = d;
          last = d;
          worst_dev = std::max(worst_dev, d.max_radius_deviation);
        });
      } catch (const ringcc::IntegrationError& e) {
        throw truncate(e);
      } catch (const ringcc::CoincidenceError& e) {
        throw truncate(e);
      }
      write_row(summary, {"omega", format_double(omega)});
      write_row(summary, {"final_max_radius_deviation", format_double(last.max_radius_deviation)});
      write_row(summary, {"max_radius_deviation", format_double(worst_dev)});
      if (first->energy != 0.0)
        write_row(summary, {"relative_energy_change", format_double(last.energy / first->energy - 1.0)});
      if (first->ang_momentum != 0.0)
        write_row(summary, {"relative_ang_momentum_change", format_double(last.ang_momentum / first->ang_momentum - 1.0)});
    } else {
      if (p->system != "ring") throw ExitRequest{kExitUsage, "simulate: rotating mode supports system = ring only"};
      const double phi = p->phi0 * std::numbers::pi / static_cast<double>(p->n);
      const double omega = p->frame == "stationary" ? ringcc::stationary_frame_omega(ring, phi)
                                                    : ringcc::omega_equilibrium(ring).omega;
      const double period = 2.0 * std::numbers::pi / omega;
      const ringcc::IntegratorConfig config{ringcc::Integrator::Rk4, period / p->steps_per_period, p->periods * period,
                                            p->record_every};
      const double r0 = 1.0 + p->x0;
      const ringcc::TestParticleState start{p->x0, phi, 0.0, omega * (1.0 / (r0 * r0) - 1.0)};
      std::vector<double> ts;
      std::vector<double> xs;
      try {
        ringcc::integrate_rotating_observed(ring, start, config, {omega}, [&](const ringcc::RotatingSample& r) {
          const auto q = ringcc::to_inertial(ring, r, omega);
          const double rad = 1.0 + r.state.x;
          const double theta = r.state.phi + omega * r.time;
          const double vt = rad * (r.state.phi_dot + omega);
          write_row(traj, {format_double(r.time), "0", format_double(q.x), format_double(q.y),
                           format_double(r.state.x_dot * std::cos(theta) - vt * std::sin(theta)),
                           format_double(r.state.x_dot * std::sin(theta) + vt * std::cos(theta))});
          write_row(diag, {format_double(r.time), format_double(ringcc::jacobi_integral(ring, r.state, omega)),
                           format_double(r.state.angular_momentum(1.0, omega)), format_double(std::abs(r.state.x))});
          ts.push_back(r.time);
          xs.push_back(r.state.x);
        });
      } catch (const ringcc::IntegrationError& e) {
        throw truncate(e);
      } catch (const ringcc::CoincidenceError& e) {
        throw truncate(e);
      }
      write_row(summary, {"frame_omega", format_double(omega)});
      if (p->measure) {
        const auto fe = ringcc::measure_frequency(ts, xs);
        const double predicted = ringcc::epicyclic_omega(ring, omega, phi, true);
        write_row(summary, {"frequency_measured", format_double(fe.omega)});
        write_row(summary, {"frequency_std_error", format_double(fe.std_error)});
        write_row(summary, {"frequency_predicted", format_double(predicted)});
        write_row(summary, {"frequency_relative_difference", format_double(fe.omega / predicted - 1.0)});
      }
    }
    std::cout << summary.str() << std::flush;
    return kExitOk;
  };
}

// figures -------------------------------------------------------------------

void add_figures(CLI::App& app, Command& cmd) {
  struct Params {
    bool fig1 = false;
    bool fig2 = false;
    std::int64_t n = 50;
    double ratio = 1e-3;
    double x_min = 0.05;
    double x_max = 0.3;
    int points = 26;
    double resistance = 0.1;
    double forcing = 0.0;
    double periods = 10.0;
    int samples = 1001;
    std::string output;
  };
  auto p = std::make_shared<Params>();
  auto* sub = app.add_subcommand("figures", "Data series for the force-ratio and oscillation figures");
  cmd.app = sub;
  sub->add_option("--config", cmd.config_path, "key = value file");
  auto* o_f1 = sub->add_flag("--fig1", p->fig1, "radial/tangential force ratio along a ray");
  auto* o_f2 = sub->add_flag("--fig2", p->fig2, "stationary and damped oscillations");
  auto* o_n = sub->add_option("-N,--n-particles", p->n, "ring size")->check(CLI::Range(std::int64_t{2}, std::int64_t{10'000'000}));
  auto* o_r = sub->add_option("--ratio", p->ratio, "ring mass over central mass, N m / M")->check(CLI::Range(0.0, 1e6));
  auto* o_xl = sub->add_option("--x-min", p->x_min, "smallest |x|/R sampled (fig1)")->check(CLI::Range(1e-12, 0.9));
  auto* o_xh = sub->add_option("--x-max", p->x_max, "largest |x|/R sampled (fig1)")->check(CLI::Range(1e-12, 0.9));
  auto* o_pt = sub->add_option("--points", p->points, "samples per side (fig1)")->check(CLI::Range(2, 100000));
  auto* o_k = sub->add_option("--resistance", p->resistance, "damping factor k in units of omega (fig2)")->check(CLI::Range(0.0, 1e6));
  auto* o_fo = sub->add_option("--forcing", p->forcing, "coefficient f of the f x term in units of omega^2 (fig2)")->check(CLI::Range(-1e6, 1e6));
  auto* o_pe = sub->add_option("--periods", p->periods, "duration in periods (fig2)")->check(CLI::Range(1e-3, 1e6));
  auto* o_sa = sub->add_option("--samples", p->samples, "samples (fig2)")->check(CLI::Range(2, 10'000'000));
  auto* o_out = sub->add_option("-o,--output", p->output, "output file (default stdout)");

  cmd.bind("fig1", o_f1, [p](const RunConfig& c) { p->fig1 = c.get_bool("fig1", false); });
  cmd.bind("fig2", o_f2, [p](const RunConfig& c) { p->fig2 = c.get_bool("fig2", false); });
  cmd.bind("N", o_n, [p](const RunConfig& c) { p->n = c.get_int("N", p->n, 2, 10'000'000); });
  cmd.bind("ratio", o_r, [p](const RunConfig& c) { p->ratio = c.get_double("ratio", p->ratio, 0.0, 1e6); });
  cmd.bind("x_min", o_xl, [p](const RunConfig& c) { p->x_min = c.get_double("x_min", p->x_min, 1e-12, 0.9); });
  cmd.bind("x_max", o_xh, [p](const RunConfig& c) { p->x_max = c.get_double("x_max", p->x_max, 1e-12, 0.9); });
  cmd.bind("points", o_pt, [p](const RunConfig& c) { p->points = static_cast<int>(c.get_int("points", p->points, 2, 100000)); });
  cmd.bind("resistance", o_k, [p](const RunConfig& c) { p->resistance = c.get_double("resistance", p->resistance, 0.0, 1e6); });
  cmd.bind("forcing", o_fo, [p](const RunConfig& c) { p->forcing = c.get_double("forcing", p->forcing, -1e6, 1e6); });
  cmd.bind("periods", o_pe, [p](const RunConfig& c) { p->periods = c.get_double("periods", p->periods, 1e-3, 1e6); });
  cmd.bind("samples", o_sa, [p](const RunConfig& c) { p->samples = static_cast<int>(c.get_int("samples", p->samples, 2, 10'000'000)); });
  cmd.bind("output", o_out, [p](const RunConfig& c) { p->output = c.get_string("output"); });

  cmd.run = [p]() {
    if (p->fig1 == p->fig2) throw ExitRequest{kExitUsage, "figures: give exactly one of --fig1 and --fig2"};
    const auto ring = ringcc::normalized_system(p->n, p->ratio);
    std::ostringstream out;
    if (p->fig1) {
      if (!(p->x_min < p->x_max)) throw ExitRequest{kExitUsage, "figures: --x-min must be below --x-max"};
      std::vector<double> xs;
      const auto side = ringcc::detail::geometric_grid(p->x_min, p->x_max, p->points);
      for (auto it = side.rbegin(); it != side.rend(); ++it) xs.push_back(-*it);
      xs.insert(xs.end(), side.begin(), side.end());
      write_row(out, {"x_over_r", "ratio", "capped"});
      for (const auto& row : ringcc::force_ratio_series(ring, xs))
        write_row(out, {format_double(row.x_over_r), format_double(row.ratio), row.capped ? "1" : "0"});
    } else {
      const double w = ringcc::omega_equilibrium(ring).omega;
      const double omega = ringcc::epicyclic_omega(ring, w);
      const auto d = ringcc::oscillation_demo(omega, p->resistance * omega, p->forcing * omega * omega, p->periods,
                                              p->samples);
      write_row(out, {"t_over_T", "stationary", "damped"});
      for (std::size_t i = 0; i < d.t_over_period.size(); ++i)
        write_row(out, {format_double(d.t_over_period[i]), format_double(d.stationary[i]), format_double(d.damped[i])});
    }
    emit(p->output, out.str());
    return kExitOk;
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ring central configurations: sums, libration points, rotation rates and simulations"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "show help for every subcommand");

  std::vector<Command> commands(5);
  add_sums(app, commands[0]);
  add_libration(app, commands[1]);
  add_omega(app, commands[2]);
  add_simulate(app, commands[3]);
  add_figures(app, commands[4]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  for (auto& cmd : commands) {
    if (!cmd.app->parsed()) continue;
    try {
      cmd.apply_config();
      return cmd.run();
    } catch (const ExitRequest& e) {
      std::cerr << "ringcc: " << e.message << '\n';
      return e.code;
    } catch (const ConfigError& e) {
      std::cerr << "ringcc: " << e.what() << '\n';
      return kExitUsage;
    } catch (const ringcc::InsufficientDataError& e) {
      std::cerr << "ringcc: " << e.what() << '\n';
      return kExitNumerical;
    } catch (const std::invalid_argument& e) {
      std::cerr << "ringcc: " << e.what() << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "ringcc: " << e.what() << '\n';
      return kExitNumerical;
    }
  }
  return kExitUsage;
}
