#include "symcap/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "symcap/acceptance.hpp"
#include "symcap/errors.hpp"
#include "symcap/io.hpp"
#include "symcap/montecarlo.hpp"

namespace symcap {

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      fail(ErrorCode::Input, what + ": cannot parse \"" + item + "\"");
    }
    if (used != item.size() || !std::isfinite(v)) fail(ErrorCode::Input, what + ": cannot parse \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) fail(ErrorCode::Input, what + " is empty");
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Input, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON, or "@path" to read it from a file.
Json json_arg(const std::string& text, const std::string& what) {
  const std::string body = !text.empty() && text[0] == '@' ? slurp(text.substr(1)) : text;
  try {
    return Json::parse(body);
  } catch (const Json::exception& ex) {
    fail(ErrorCode::Input, what + " is not valid JSON: " + ex.what());
  }
}

ActionHamiltonian table_from_file(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<double> actions, energies;
  std::string line;
  while (std::getline(in, line)) {
    for (auto& c : line)
      if (c == ',' || c == '\t') c = ' ';
    std::istringstream ls(line);
    double a, e;
    if (line.empty() || line[0] == '#' || !(ls >> a >> e)) continue;
    actions.push_back(a);
    energies.push_back(e);
  }
  return ActionHamiltonian::table(actions, energies);
}

int exit_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Numerical:
    case ErrorCode::SamplingTooCoarse:
      return kExitVerification;
    default:
      return kExitInput;
  }
}

}  // namespace

ActionHamiltonian parse_k_spec(const std::string& spec, int n) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) fail(ErrorCode::Input, "K spec must look like kind:args, got \"" + spec + "\"");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (kind == "oscillator") {
    auto omega = parse_list(args, "oscillator frequencies");
    if (static_cast<int>(omega.size()) != n)
      fail(ErrorCode::Dimension, "oscillator needs one frequency per Maslov index");
    return ActionHamiltonian::oscillator(std::move(omega));
  }
  if (kind == "power") {
    const auto a = parse_list(args, "power exponent");
    if (a.size() != 1) fail(ErrorCode::Input, "power takes one exponent");
    return ActionHamiltonian::power(n, a[0]);
  }
  if (kind == "table") {
    if (n != 1) fail(ErrorCode::Dimension, "a K table describes one degree of freedom");
    return table_from_file(args);
  }
  fail(ErrorCode::Input, "unknown K kind \"" + kind + "\"");
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symplectic capacities, non-squeezing and EBK quantization toolkit", "symcap"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string out_path;
  app.add_option("--hbar", cfg.hbar, "reduced Planck constant")->envname("SYMCAP_HBAR");
  app.add_option("--tol", cfg.tol, "verification tolerance")->envname("SYMCAP_TOL");
  app.add_option("--seed", cfg.seed, "base random seed")->envname("SYMCAP_SEED");
  app.add_option("--samples", cfg.samples, "Monte-Carlo samples")->envname("SYMCAP_SAMPLES");
  app.add_option("--format", cfg.format, "json or csv")->envname("SYMCAP_FORMAT");
  app.add_option("--out", out_path, "write the report here instead of stdout")->envname("SYMCAP_OUT");

  auto* spectrum = app.add_subcommand("spectrum", "symplectic spectrum and Williamson form of a Hessian");
  std::string hessian;
  double level = 1.0;
  spectrum->add_option("--hessian", hessian, "matrix JSON {\"n\",\"rows\"} or @file")->required();
  spectrum->add_option("--level", level, "ellipsoid level for the radii");

  auto* cap = app.add_subcommand("capacity", "capacity of a phase-space region");
  std::string region_text, outer_text;
  double lambda = 1.0;
  cap->add_option("--region", region_text, "region JSON or @file")->required();
  cap->add_option("--scale", lambda, "scale the region about the origin first");
  cap->add_option("--inside", outer_text, "also test inclusion in this region");

  auto* squeeze = app.add_subcommand("squeeze", "batch linear non-squeezing check");
  NonsqueezeConfig nc;
  std::string matrix_text;
  squeeze->add_option("--n", nc.n, "degrees of freedom");
  squeeze->add_option("--trials", nc.trials, "random symplectic matrices");
  squeeze->add_option("--radius", nc.radius, "ball radius");
  squeeze->add_option("--spread", nc.spread, "generator spread");
  squeeze->add_flag("--translate", nc.translate, "compose with random translations");
  squeeze->add_option("--matrix", matrix_text, "shadows of one given matrix instead (JSON or @file)");

  auto* maslov = app.add_subcommand("maslov", "Maslov index of a Lagrangian loop");
  std::string loop_text, radii_text;
  int cycle = 1, points = 64;
  maslov->add_option("--loop", loop_text, "loop JSON or @file");
  maslov->add_option("--torus", radii_text, "radii R1,..,Rn of a torus");
  maslov->add_option("--cycle", cycle, "basic cycle j of the torus");
  maslov->add_option("--points", points, "frames along the torus cycle");

  auto* ebk = app.add_subcommand("ebk", "EBK energy levels of an action Hamiltonian");
  std::string k_spec, maslov_text;
  int n_max = 0;
  ebk->add_option("--K", k_spec, "oscillator:w1,..,wn | power:a | table:file")->required();
  ebk->add_option("--maslov", maslov_text, "Maslov indices m1,..,mn")->required();
  ebk->add_option("--Nmax", n_max, "largest quantum number per degree of freedom")->required();

  auto* flow = app.add_subcommand("flow", "exact flow of a quadratic Hamiltonian");
  std::string z0_text;
  double t_end = 2.0 * kPi;
  int steps = 16;
  flow->add_option("--hessian", hessian, "matrix JSON or @file")->required();
  flow->add_option("--z0", z0_text, "initial point x1,..,xn,p1,..,pn")->required();
  flow->add_option("--t", t_end, "final time");
  flow->add_option("--steps", steps, "output samples");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  int only = 0;
  selftest->add_option("--only", only, "run a single criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n" << app.help();
    return kExitInput;
  }

  std::ostringstream report;
  int code = kExitOk;
  try {
    validate(cfg);
    const bool csv = cfg.format == "csv";
    if (*spectrum) {
      const Matrix r = matrix_from_json(json_arg(hessian, "hessian"));
      const auto wd = williamson_decompose(r);
      auto spec = wd.spectrum;
      spec.radii = normal_radii(r, level);
      if (csv) {
        report << spectrum_csv(spec);
      } else {
        report << Json{{"spectrum", spectrum_to_json(spec)},
                       {"level", level},
                       {"S", matrix_to_json(wd.s.matrix())},
                       {"residual", wd.residual}}
                      .dump(2)
               << '\n';
      }
    } else if (*cap) {
      PhaseRegion region = region_from_json(json_arg(region_text, "region"));
      if (lambda != 1.0) region = scale_region(region, lambda);
      Json j = capacity_to_json(capacity(region));
      if (!outer_text.empty()) {
        const auto inc = inclusion_check(region, region_from_json(json_arg(outer_text, "outer region")), cfg.seed,
                                         cfg.samples);
        j["included"] = inc.included;
        j["analytic"] = inc.analytic;
        if (inc.witness) j["witness"] = std::vector<double>(inc.witness->coords().data(),
                                                            inc.witness->coords().data() + inc.witness->coords().size());
      }
      if (csv) report << "value,exact,lower,upper\n" << j["value"] << ',' << j["exact"] << ',' << j["lower"] << ','
                      << j["upper"] << '\n';
      else report << j.dump(2) << '\n';
    } else if (*squeeze) {
      if (!matrix_text.empty()) {
        const Matrix m = matrix_from_json(json_arg(matrix_text, "matrix"));
        const auto s = SymplecticMatrix::from(m, cfg.tol);
        Json planes = Json::array();
        if (csv) report << "j,projection_area,intersection_area,projection_ratio,intersection_ratio,mc_projection,mc_intersection\n";
        for (int j = 1; j <= s.n(); ++j) {
          const auto r = shadow_report(s, Vector::Zero(2 * s.n()), nc.radius, j);
          const auto mp = mc_projection_area(m, nc.radius, j, cfg.samples, derive_seed(cfg.seed, 2 * j));
          const auto mi = mc_intersection_area(m, nc.radius, j, cfg.samples, derive_seed(cfg.seed, 2 * j + 1));
          if (r.projection_ratio < 1.0 - cfg.tol) code = kExitVerification;
          Json pj = shadow_to_json(r);
          pj["mc_projection_area"] = mp.area;
          pj["mc_intersection_area"] = mi.area;
          pj["mc_intersection_std_error"] = mi.std_error;
          planes.push_back(pj);
          if (csv) {
            report.precision(17);
            report << j << ',' << r.projection_area << ',' << r.intersection_area << ',' << r.projection_ratio << ','
                   << r.intersection_ratio << ',' << mp.area << ',' << mi.area << '\n';
          }
        }
        if (!csv) report << Json{{"n", s.n()}, {"radius", nc.radius}, {"planes", planes}}.dump(2) << '\n';
      } else {
        nc.seed = cfg.seed;
        nc.tol = cfg.tol;
        const auto rep = nonsqueeze_verify(nc);
        if (rep.violations) code = kExitVerification;
        const Json j = nonsqueeze_to_json(rep);
        if (csv) {
          report << "trials,violations,min_ratio,max_intersection_ratio,worst_trial,worst_j\n"
                 << j["trials"] << ',' << j["violations"] << ',' << j["min_ratio"] << ','
                 << j["max_intersection_ratio"] << ',' << j["worst_trial"] << ',' << j["worst_j"] << '\n';
        } else {
          report << j.dump(2) << '\n';
        }
      }
    } else if (*maslov) {
      if (loop_text.empty() == radii_text.empty()) fail(ErrorCode::Input, "give exactly one of --loop or --torus");
      const auto loop = !loop_text.empty() ? loop_from_json(json_arg(loop_text, "loop"))
                                           : torus_cycle_loop(parse_list(radii_text, "torus radii"), cycle, points);
      const auto r = maslov_index(loop);
      if (csv) report << "index,raw_winding,refinement_depth\n" << r.index << ',' << r.raw_winding << ','
                      << r.refinement_depth << '\n';
      else report << maslov_to_json(r).dump(2) << '\n';
    } else if (*ebk) {
      std::vector<int> m;
      for (double v : parse_list(maslov_text, "Maslov indices")) {
        if (v != std::floor(v)) fail(ErrorCode::Input, "Maslov indices must be integers");
        m.push_back(static_cast<int>(v));
      }
      const auto k = parse_k_spec(k_spec, static_cast<int>(m.size()));
      const auto spec = energy_levels(k, m, n_max, cfg.hbar);
      for (const auto& w : spec.warnings) err << "warning: " << w << '\n';
      Json j = ebk_to_json(spec);
      for (const auto& e : j["entries"])
        if (!e["satisfied"].get<bool>()) code = kExitVerification;
      if (k.monotone()) {
        const auto bound = verify_energy_bound(k, spec);
        j["ground_bound"] = bound.ground;
        j["min_margin"] = bound.min_margin;
        j["energy_violations"] = bound.violations;
        if (!bound.passed) code = kExitVerification;
      }
      if (csv) report << ebk_to_csv(spec);
      else report << j.dump(2) << '\n';
    } else if (*flow) {
      const QuadraticHamiltonian h(matrix_from_json(json_arg(hessian, "hessian")));
      const auto zv = parse_list(z0_text, "z0");
      const PhasePoint z0(Eigen::Map<const Vector>(zv.data(), static_cast<Eigen::Index>(zv.size())));
      if (z0.n() != h.n()) fail(ErrorCode::Dimension, "z0 and Hessian have different dimension");
      if (steps < 1) fail(ErrorCode::Input, "steps must be >= 1");
      std::vector<double> times;
      for (int k = 0; k <= steps; ++k) times.push_back(t_end * k / steps);
      const double drift = flow_energy_drift(h, z0, times);
      Json traj = Json::array();
      if (csv) {
        report.precision(17);
        report << 't';
        for (int i = 1; i <= h.n(); ++i) report << ",x" << i;
        for (int i = 1; i <= h.n(); ++i) report << ",p" << i;
        report << ",energy\n";
      }
      for (double t : times) {
        const Vector z = quad_propagator(h, t).apply(z0.coords());
        if (csv) {
          report << t;
          for (Eigen::Index i = 0; i < z.size(); ++i) report << ',' << z(i);
          report << ',' << h.energy(z) << '\n';
        } else {
          traj.push_back({{"t", t}, {"z", std::vector<double>(z.data(), z.data() + z.size())}, {"energy", h.energy(z)}});
        }
      }
      if (drift > cfg.tol) code = kExitVerification;
      if (!csv) report << Json{{"drift", drift}, {"trajectory", traj}}.dump(2) << '\n';
    } else if (*selftest) {
      const auto rep = run_acceptance(cfg, only);
      if (!rep.passed()) code = kExitVerification;
      if (csv) {
        report << "id,name,passed,detail\n";
        for (const auto& c : rep.criteria)
          report << c.id << ',' << c.name << ',' << (c.passed ? "true" : "false") << ",\"" << c.detail << "\"\n";
      } else {
        report << rep.to_json(cfg).dump(2) << '\n';
      }
    }
  } catch (const Error& ex) {
    err << "error [" << to_string(ex.code()) << "]: " << ex.what() << '\n';
    return exit_for(ex.code());
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitInput;
  }

  if (out_path.empty()) {
    out << report.str();
  } else {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write " << out_path << '\n';
      return kExitInput;
    }
    f << report.str();
  }
  return code;
}

}  // namespace symcap
