#include "orthosym/cli.hpp"

#include "orthosym/closed_form.hpp"
#include "orthosym/combinatorics.hpp"
#include "orthosym/oracles.hpp"
#include "orthosym/parse.hpp"
#include "orthosym/recursion.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>

namespace orthosym {

namespace {

using json = nlohmann::ordered_json;

json complex_json(cd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

double z_score(cd closed, cd mc, double se) {
  const double diff = std::abs(closed - mc);
  if (se > 0.0) return diff / se;
  // Deterministic "samples" (trivial ensembles): agreement up to rounding.
  return diff <= 1e-12 * std::max(1.0, std::abs(closed)) ? 0.0
                                                          : std::numeric_limits<double>::infinity();
}

// Tracks agreement across the records of one report.
struct Verdict {
  double threshold;
  double worst_z = 0.0;
  bool exact_ok = true;

  json record(cd closed, const std::optional<McEstimate>& mc) {
    json r;
    r["closed_form"] = complex_json(closed);
    if (mc) {
      const double z = z_score(closed, mc->mean, mc->std_error);
      worst_z = std::max(worst_z, z);
      r["mc_mean"] = complex_json(mc->mean);
      r["mc_stderr"] = mc->std_error;
      r["z_score"] = z;
    } else {
      r["mc_mean"] = nullptr;
      r["mc_stderr"] = nullptr;
      r["z_score"] = nullptr;
    }
    return r;
  }

  json exact(const std::string& what, double max_abs_diff, double tol) {
    const bool ok = max_abs_diff <= tol;
    exact_ok = exact_ok && ok;
    return json{{"check", what}, {"max_abs_diff", max_abs_diff}, {"tolerance", tol}, {"pass", ok}};
  }

  bool agree() const { return exact_ok && worst_z <= threshold; }
};

json config_echo(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  if (!c.family.empty()) j["family"] = c.family;
  if (c.m) j["m"] = *c.m;
  if (c.n) j["n"] = *c.n;
  if (!c.x_eigs.empty()) j["x_eigs"] = c.x_eigs;
  if (!c.y_eigs.empty()) j["y_eigs"] = c.y_eigs;
  j["gamma"] = c.gamma;
  if (!c.x_pts.empty()) j["x_pts"] = c.x_pts;
  if (!c.y_pts.empty()) j["y_pts"] = c.y_pts;
  j["class"] = c.class_selector;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["z_threshold"] = c.z_threshold;
  if (c.command == "bijection") j["r"] = c.r;
  j["r_max"] = c.r_max;
  j["shards"] = c.shards;
  j["threads"] = c.threads;
  return j;
}

McOptions mc_options(const RunConfig& c) { return McOptions{c.shards, c.threads}; }

GroupFamily group_family(const RunConfig& c) {
  const Family f = parse_family(c.family);
  std::optional<int> rank = f == Family::U ? (c.n ? c.n : c.m) : c.m;
  // Without an explicit rank, the number of X eigenvalues determines it.
  if (!rank && !c.x_eigs.empty()) rank = static_cast<int>(parse_double_list(c.x_eigs).size());
  if (!rank) throw InvalidArgument("--m is required (or implied by --x-eigs)");
  return GroupFamily(f, *rank);
}

GroupSpectrum spectrum(const GroupFamily& fam, const std::string& text, const char* flag) {
  if (text.empty()) throw InvalidArgument(std::string(flag) + " is required");
  return GroupSpectrum(fam, parse_double_list(text));
}

SpectralPoints spectral_points(const RunConfig& c) {
  if (c.x_pts.empty() || c.y_pts.empty()) throw InvalidArgument("--x-pts and --y-pts are required");
  SpectralPoints p{parse_complex_list(c.x_pts), parse_complex_list(c.y_pts)};
  p.validate();
  return p;
}

// Indices into enumerate_classes selected by --class.
std::vector<std::size_t> selected_classes(const RunConfig& c, int R) {
  const std::size_t total = enumerate_classes(R, c.r_max).size();
  std::vector<std::size_t> idx;
  if (c.class_selector == "all") {
    for (std::size_t k = 0; k < total; ++k) idx.push_back(k);
    return idx;
  }
  const Perm p = parse_perm(c.class_selector);
  if (static_cast<int>(p.size()) != 2 * R)
    throw InvalidArgument("--class must be a permutation of 1.." + std::to_string(2 * R));
  idx.push_back(perm_rank(p));
  return idx;
}

json class_json(const TetradClass& cl) {
  json cycles = json::array();
  for (const auto& cyc : cl.cycles) {
    json jc = json::array();
    for (const auto& [i, j] : cyc) jc.push_back({i, j});
    cycles.push_back(jc);
  }
  return json{{"pi", cl.perm2R},
              {"pi_cycles", cycle_notation(cl.perm2R)},
              {"sigma", cl.canonical.sigma},
              {"tau", cl.canonical.tau},
              {"s", signs_to_string(cl.canonical.s)},
              {"t", signs_to_string(cl.canonical.t)},
              {"cycles", cycles}};
}

std::vector<TetradClass> subset(const std::vector<TetradClass>& all, const std::vector<std::size_t>& idx) {
  std::vector<TetradClass> out;
  for (auto k : idx) out.push_back(all[k]);
  return out;
}

// --- subcommands ---------------------------------------------------------------

json partition_section(const RunConfig& c, Verdict& v) {
  const GroupFamily fam = group_family(c);
  const GroupSpectrum x = spectrum(fam, c.x_eigs, "--x-eigs");
  const GroupSpectrum y = spectrum(fam, c.y_eigs, "--y-eigs");
  const PartitionResult cf = partition(x, y, c.gamma);
  std::optional<McEstimate> mc;
  if (c.samples > 0 && fam.tag != Family::U)
    mc = mc_group_partition(x, y, c.gamma, c.samples, c.seed, mc_options(c));
  json r = v.record(cf.value, mc);
  r["group"] = fam.name();
  return r;
}

json correlator_section(const RunConfig& c, Verdict& v) {
  const GroupFamily fam = group_family(c);
  if (fam.tag == Family::U) throw InvalidArgument("correlator: the u family is not supported");
  const GroupSpectrum x = spectrum(fam, c.x_eigs, "--x-eigs");
  const GroupSpectrum y = spectrum(fam, c.y_eigs, "--y-eigs");
  const SpectralPoints pts = spectral_points(c);
  const auto classes = enumerate_classes(pts.rank(), c.r_max);
  const auto idx = selected_classes(c, pts.rank());
  const bool direct = std::abs(c.gamma - 0.5) <= 1e-12;
  const CVector cf = direct ? correlator_vector(x, y, pts, c.gamma, classes)
                            : correlator_vector_rescaled(x, y, pts, c.gamma, classes);
  std::optional<McVectorEstimate> mc;
  if (c.samples > 0)
    mc = mc_group_correlator(x, y, pts, subset(classes, idx), c.gamma, c.samples, c.seed,
                             mc_options(c), direct ? 1.0 : 2.0 * c.gamma);
  json recs = json::array();
  for (std::size_t q = 0; q < idx.size(); ++q) {
    std::optional<McEstimate> e;
    if (mc) e = mc->component(static_cast<Eigen::Index>(q));
    json r = v.record(cf(static_cast<Eigen::Index>(idx[q])), e);
    r["class"] = class_json(classes[idx[q]]);
    recs.push_back(r);
  }
  json out;
  out["group"] = fam.name();
  out["basis"] = direct ? "length-one cycles carry 1" : "length-one cycles carry 2*gamma";
  out["records"] = recs;
  return out;
}

struct TriangularSetup {
  Twist twist;
  int n;
  std::vector<double> x;
  std::vector<double> y;
};

TriangularSetup triangular_setup(const RunConfig& c) {
  const Family f = parse_family(c.family);
  if (f == Family::U) throw InvalidArgument("triangular: the u family has no triangular ensemble");
  int n;
  if (c.n) {
    n = *c.n;
  } else if (c.m) {
    n = GroupFamily(f, *c.m).matrix_size();
  } else {
    throw InvalidArgument("--n (or --m) is required");
  }
  if (n < 1) throw InvalidArgument("--n must be positive");
  if (f == Family::OEven && n % 2 != 0) throw InvalidArgument("o-even requires even --n");
  if (f == Family::OOdd && n % 2 != 1) throw InvalidArgument("o-odd requires odd --n");
  if (f == Family::Sp && n % 2 != 0) throw InvalidArgument("sp requires even --n");
  TriangularSetup s{twist_for(f), n, {}, {}};
  if (n / 2 > 0) {
    if (c.x_eigs.empty() || c.y_eigs.empty()) throw InvalidArgument("--x-eigs and --y-eigs are required");
    s.x = parse_double_list(c.x_eigs);
    s.y = parse_double_list(c.y_eigs);
  }
  if (static_cast<int>(s.x.size()) != n / 2 || static_cast<int>(s.y.size()) != n / 2)
    throw InvalidArgument("triangular: need floor(n/2) eigenvalues in --x-eigs and --y-eigs");
  return s;
}

json triangular_section(const RunConfig& c, Verdict& v) {
  if (std::abs(c.gamma - 0.5) > 1e-12)
    throw InvalidArgument("triangular: the ensemble is defined at gamma = 0.5");
  const TriangularSetup s = triangular_setup(c);
  const SpectralPoints pts = spectral_points(c);
  const auto classes = enumerate_classes(pts.rank(), c.r_max);
  const auto idx = selected_classes(c, pts.rank());
  const CVector cf = triangular_expectation(s.twist, s.n, s.x, s.y, pts, classes);
  std::optional<McVectorEstimate> mc;
  if (c.samples > 0)
    mc = mc_triangular_expectation(s.twist, s.n, s.x, s.y, pts, subset(classes, idx), c.samples,
                                   c.seed, mc_options(c));
  json recs = json::array();
  for (std::size_t q = 0; q < idx.size(); ++q) {
    std::optional<McEstimate> e;
    if (mc) e = mc->component(static_cast<Eigen::Index>(q));
    json r = v.record(cf(static_cast<Eigen::Index>(idx[q])), e);
    r["class"] = class_json(classes[idx[q]]);
    recs.push_back(r);
  }
  json out;
  out["twist"] = twist_name(s.twist);
  out["n"] = s.n;
  out["records"] = recs;
  if (s.twist == Twist::J && s.n <= 2) {
    // The triangular space is {0}: compare with direct evaluation at T = 0.
    const CMatrix A = I_UNIT * j_diagonal(std::vector<cd>(s.x.begin(), s.x.end()), s.n);
    const CMatrix B = I_UNIT * j_diagonal(std::vector<cd>(s.y.begin(), s.y.end()), s.n);
    double diff = 0.0;
    for (std::size_t k = 0; k < classes.size(); ++k)
      diff = std::max(diff, std::abs(cf(static_cast<Eigen::Index>(k)) -
                                     basis_eval_recursive(classes[k], pts, A, B, s.twist)));
    out["exact_t0"] = v.exact("recursion vs direct evaluation at T = 0", diff, 1e-12);
  }
  return out;
}

json wick_section(const RunConfig& c, Verdict& v) {
  const TriangularSetup s = triangular_setup(c);
  double diff = 0.0;
  for (int i = 1; i <= s.n; ++i)
    for (int j = 1; j <= s.n; ++j)
      for (int k = 1; k <= s.n; ++k)
        for (int l = 1; l <= s.n; ++l) {
          const cd w = wick_enumerate({{false, i, j}, {true, k, l}}, s.twist, s.n);
          diff = std::max(diff, std::abs(w - propagator_table(s.twist, s.n, i, j, k, l)));
        }
  return v.exact("propagator table vs Wick enumeration", diff, 0.0);
}

json bijection_section(const RunConfig& c) {
  const auto classes = enumerate_classes(c.r, c.r_max);
  json table = json::array();
  bool roundtrip = true;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    json e = class_json(classes[k]);
    const bool ok = tetrad_to_perm(classes[k].canonical) == classes[k].perm2R;
    roundtrip = roundtrip && ok;
    e["index"] = k;
    e["roundtrip"] = ok;
    table.push_back(e);
  }
  return json{{"R", c.r}, {"class_count", classes.size()}, {"roundtrip_ok", roundtrip}, {"classes", table}};
}

int execute(const RunConfig& c, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  Verdict v{c.z_threshold};
  json report;
  report["library_version"] = kLibraryVersion;
  report["config"] = config_echo(c);
  bool disagreement_fails = false;
  if (c.command == "partition") {
    report["partition"] = partition_section(c, v);
  } else if (c.command == "correlator") {
    report["correlator"] = correlator_section(c, v);
  } else if (c.command == "triangular") {
    report["triangular"] = triangular_section(c, v);
  } else if (c.command == "bijection") {
    report["bijection"] = bijection_section(c);
    if (!report["bijection"]["roundtrip_ok"].get<bool>()) v.exact_ok = false;
    disagreement_fails = true;
  } else if (c.command == "crosscheck") {
    disagreement_fails = true;
    if (c.n) {
      report["triangular"] = triangular_section(c, v);
      report["wick"] = wick_section(c, v);
    } else {
      report["partition"] = partition_section(c, v);
      if (!c.x_pts.empty() || !c.y_pts.empty()) report["correlator"] = correlator_section(c, v);
    }
    report["max_z_score"] = v.worst_z;
    report["agreement"] = v.agree();
  }
  if (c.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    report["timing"] = json{{"seconds", dt.count()}};
  }
  const std::string text = report.dump(2) + "\n";
  if (c.out.empty()) {
    out << text;
  } else {
    std::ofstream f(c.out);
    if (!f) throw InvalidArgument("cannot open --out file '" + c.out + "'");
    f << text;
  }
  return disagreement_fails && !v.agree() ? kExitDisagreement : kExitOk;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("ORTHOSYM_SEED");
  if (!s || !*s) return kDefaultSeed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0') throw InvalidArgument("ORTHOSYM_SEED must be an unsigned integer");
  return v;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg.seed = env_seed();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  CLI::App app{"Angular integrals over O(n) and Sp(2m): closed forms and Monte Carlo oracles",
               "orthosym"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kLibraryVersion);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Monte Carlo seed (default: $ORTHOSYM_SEED or built-in)");
    sub->add_option("--out", cfg.out, "Write the JSON report to this file instead of stdout");
    sub->add_option("--r-max", cfg.r_max, "Largest allowed basis rank R")->check(CLI::PositiveNumber);
    sub->add_option("--shards", cfg.shards, "Monte Carlo shard count")->check(CLI::PositiveNumber);
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", cfg.timing, "Include wall-clock timing in the report");
  };
  auto add_group = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "o-even | o-odd | sp | u")->required();
    sub->add_option("--m", cfg.m, "Rank parameter m");
    sub->add_option("--n", cfg.n, "Matrix size n");
    sub->add_option("--x-eigs", cfg.x_eigs, "Comma-separated X_1..X_m");
    sub->add_option("--y-eigs", cfg.y_eigs, "Comma-separated Y_1..Y_m");
    sub->add_option("--gamma", cfg.gamma, "Coupling gamma");
    sub->add_option("--samples", cfg.samples, "Monte Carlo samples (0 disables)");
    sub->add_option("--z-threshold", cfg.z_threshold, "Agreement threshold on |z|");
  };
  auto add_points = [&](CLI::App* sub) {
    sub->add_option("--x-pts", cfg.x_pts, "Comma-separated complex x_1..x_R, e.g. 2,3+1i");
    sub->add_option("--y-pts", cfg.y_pts, "Comma-separated complex y_1..y_R");
    sub->add_option("--class", cfg.class_selector, "Class as one-line permutation, or 'all'");
  };

  auto* partition_cmd = app.add_subcommand("partition", "Closed-form partition function vs Monte Carlo");
  add_group(partition_cmd);
  add_common(partition_cmd);
  auto* correlator_cmd = app.add_subcommand("correlator", "Correlation vector over tetrad classes");
  add_group(correlator_cmd);
  add_points(correlator_cmd);
  add_common(correlator_cmd);
  auto* triangular_cmd = app.add_subcommand("triangular", "Gaussian triangular-ensemble expectation");
  add_group(triangular_cmd);
  add_points(triangular_cmd);
  add_common(triangular_cmd);
  auto* bijection_cmd = app.add_subcommand("bijection", "Tetrad class <-> permutation table");
  bijection_cmd->add_option("--r", cfg.r, "Basis rank R")->check(CLI::PositiveNumber);
  add_common(bijection_cmd);
  auto* crosscheck_cmd = app.add_subcommand("crosscheck", "Formula vs Monte Carlo vs Wick checks");
  add_group(crosscheck_cmd);
  add_points(crosscheck_cmd);
  add_common(crosscheck_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfigError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    if (cfg.samples < 0) throw InvalidArgument("--samples must be non-negative");
    return execute(cfg, out);
  } catch (const RankTooLarge& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const PoleError& e) {
    err << "singularity: " << e.what() << " (index " << e.index() << ", sign "
        << (e.sign() > 0 ? "+" : "-") << ")\n";
    return kExitSingular;
  } catch (const SingularSpectrum& e) {
    err << "singularity: " << e.what() << "\n";
    return kExitSingular;
  } catch (const NonCommuting& e) {
    err << "singularity: " << e.what() << "\n";
    return kExitSingular;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

} // namespace orthosym
