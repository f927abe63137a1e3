// Command-line surface: polynomial parsing, experiment dispatch, JSON/CSV
// emission. Exit codes: 0 success, 2 validation error, 3 inconclusive verdict.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "lslab/acceptance.hpp"
#include "lslab/blowup.hpp"
#include "lslab/closed_form.hpp"
#include "lslab/parse.hpp"
#include "lslab/report.hpp"

namespace {

using namespace lslab;

struct CommonOpts {
  std::string poly_text;
  std::string poly_file;
  std::uint64_t seed = 0;
  double samples = 1e6;
  int workers = 1;
  std::string sampling = "uniform";
  std::string out;
  std::vector<double> radii;
  double ball = 0.0;
  double radial_floor = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool needs_poly = true) {
  if (needs_poly) {
    cmd->add_option("--poly", c.poly_text, "polynomial (shorthand or inline JSON)");
    cmd->add_option("--poly-file", c.poly_file, "path to polynomial JSON or shorthand");
  }
  cmd->add_option("--seed", c.seed, "random seed (default 0; all runs are reproducible)");
  cmd->add_option("--samples", c.samples, "sample count (accepts 1e7 style)");
  cmd->add_option("--workers", c.workers, "worker threads (result independent of count)");
  cmd->add_option("--sampling", c.sampling,
                  "uniform | log_radial | fiber | auto | halton");
  cmd->add_option("--radii", c.radii, "polydisc radii (default: unit polydisc)");
  cmd->add_option("--ball", c.ball, "use a ball domain with this radius");
  cmd->add_option("--radial-floor", c.radial_floor,
                  "smallest radius for log-radial draws (>= 1e-150; default 1e-15)");
  cmd->add_option("--out", c.out, "write the JSON report here instead of stdout");
}

Sampling parse_sampling(const std::string& s) {
  if (s == "uniform") return Sampling::Uniform;
  if (s == "log_radial") return Sampling::LogRadial;
  if (s == "fiber") return Sampling::Fiber;
  if (s == "auto") return Sampling::Auto;
  if (s == "halton") return Sampling::Halton;
  fail(ErrorCode::ParseError, "unknown sampling mode: " + s);
}

SparsePolynomial load_poly(const CommonOpts& c, bool require_nonconstant) {
  std::string text = c.poly_text;
  if (text.empty() && !c.poly_file.empty()) {
    std::ifstream in(c.poly_file);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + c.poly_file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  if (text.empty()) fail(ErrorCode::ParseError, "missing --poly/--poly-file");
  SparsePolynomial p = parse_polynomial(text);
  if (require_nonconstant && p.is_constant())
    fail(ErrorCode::ConstantPoly, "this command needs a nonconstant polynomial");
  return p;
}

SamplerConfig make_cfg(const CommonOpts& c, int dimension) {
  SamplerConfig cfg;
  cfg.seed = c.seed;
  cfg.n_samples = static_cast<long long>(c.samples);
  cfg.n_workers = c.workers;
  cfg.sampling = parse_sampling(c.sampling);
  if (c.ball > 0.0) {
    cfg.domain = PolyDomain::ball(c.ball);
  } else if (!c.radii.empty()) {
    cfg.domain = PolyDomain{PolyDomain::Kind::Polydisc, c.radii};
  } else {
    cfg.domain = PolyDomain::unit_polydisc(dimension);
  }
  if (c.radial_floor > 0.0) cfg.radial_floor = c.radial_floor;
  return cfg;
}

void emit(const Json& report, const std::string& out) {
  std::string text = report.dump(2);
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out);
    f << text << "\n";
  }
}

std::string g_command_line;

Json base_report(const std::string& command, double wall_seconds) {
  Json j;
  j["command"] = command;
  j["command_line"] = g_command_line;
  j["wall_clock_seconds"] = wall_seconds;
  return j;
}

std::optional<std::pair<int, int>> as_n2_monomial(const SparsePolynomial& p) {
  if (p.dimension() != 2 || p.terms().size() != 1) return std::nullopt;
  const auto& [idx, c] = *p.terms().begin();
  if (idx[0] < 1 || idx[1] < 1 || c != Complex(1.0, 0.0)) return std::nullopt;
  return std::make_pair(idx[0], idx[1]);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

std::vector<Complex> parse_point(const std::string& text, int dimension) {
  // "re,im;re,im;..." or bare reals "re;re"
  std::vector<Complex> pt;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ';')) {
    double re = 0, im = 0;
    if (sscanf(piece.c_str(), "%lf,%lf", &re, &im) < 1)
      fail(ErrorCode::ParseError, "bad point component: " + piece);
    pt.emplace_back(re, im);
  }
  if (static_cast<int>(pt.size()) != dimension)
    fail(ErrorCode::ParseError, "point has wrong number of coordinates");
  return pt;
}

IntegrandSpec parse_integrand(const std::string& s, double param) {
  using K = IntegrandSpec::Kind;
  static const std::pair<const char*, K> table[] = {
      {"grad_u_sq", K::GradUSq},     {"grad_u_p", K::GradUP},
      {"grad_v_sq", K::GradVSq},     {"abs_g", K::AbsG},
      {"abs_g_p", K::AbsGP},         {"abs_t", K::AbsT},
      {"a1_hess", K::A1Hess},        {"a2_sum", K::A2Sum},
      {"a3_sum", K::A3Sum},          {"a4_sum", K::A4Sum},
      {"inv_f_p", K::InvFP},         {"log_deriv_p", K::LogDerivP},
      {"grad_sq_inv_f_p", K::GradSqInvFP},
  };
  for (const auto& [name, kind] : table)
    if (s == name) return {kind, param};
  fail(ErrorCode::ParseError, "unknown integrand: " + s);
}

int run(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) {
    if (i) g_command_line += ' ';
    g_command_line += argv[i];
  }
  CLI::App app{"level-set integral laboratory for complex polynomials"};
  app.require_subcommand(1);

  // eval
  CommonOpts c_eval;
  std::string eval_point;
  std::string eval_singular_kind;
  auto* cmd_eval = app.add_subcommand("eval", "evaluate f, its gradient and Hessian norm");
  add_common(cmd_eval, c_eval);
  cmd_eval->add_option("--point", eval_point, "point, e.g. \"0.5,0;0.5,0\"")->required();
  cmd_eval->add_option("--singular", eval_singular_kind,
                       "also evaluate U|V|G|T|GRAD_U_NORM|GRAD_V_NORM at the point");

  // volume
  CommonOpts c_vol;
  double vol_eps = 0.1;
  auto* cmd_vol = app.add_subcommand("volume", "sublevel-set volume Vol{|f| < eps}");
  add_common(cmd_vol, c_vol);
  cmd_vol->add_option("--eps", vol_eps, "level")->required();

  // level-integral
  CommonOpts c_lvl;
  double lvl_eps = 0.1, lvl_width = 0.0;
  std::string lvl_weight = "grad";
  auto* cmd_lvl = app.add_subcommand("level-integral",
                                     "thin-shell surface integral over {|f| = eps}");
  add_common(cmd_lvl, c_lvl);
  cmd_lvl->add_option("--eps", lvl_eps, "level")->required();
  cmd_lvl->add_option("--half-width", lvl_width, "shell half width (default eps/20)");
  cmd_lvl->add_option("--weight", lvl_weight, "unit (area) | grad (|grad f| dS)");

  // energy
  CommonOpts c_en;
  double en_eps = 0.1, en_p = 2.0;
  auto* cmd_en = app.add_subcommand("energy", "sublevel energy int_{|f|<eps} |grad f|^p");
  add_common(cmd_en, c_en);
  cmd_en->add_option("--eps", en_eps, "level")->required();
  cmd_en->add_option("--p", en_p, "gradient power (default 2)");

  // fiber-volume
  CommonOpts c_fib;
  std::vector<int> fib_exponents;
  double fib_w_abs = 0.0, fib_w_re = 0.0, fib_w_im = 0.0;
  auto* cmd_fib = app.add_subcommand("fiber-volume",
                                     "fiber volume of {z^A = w} via the graph formula");
  add_common(cmd_fib, c_fib, false);
  cmd_fib->add_option("--exponents", fib_exponents, "monomial exponents")->required();
  cmd_fib->add_option("--w-abs", fib_w_abs, "|w| (w taken real positive)");
  cmd_fib->add_option("--w-re", fib_w_re, "Re w");
  cmd_fib->add_option("--w-im", fib_w_im, "Im w");

  // fit-exponent
  CommonOpts c_fit;
  std::string fit_quantity = "area";
  int fit_k0 = 3, fit_k1 = 7;
  double fit_p = 2.0;
  std::string fit_csv;
  auto* cmd_fit = app.add_subcommand(
      "fit-exponent", "power-law fit over a dyadic eps grid; writes a CSV table");
  add_common(cmd_fit, c_fit);
  cmd_fit->add_option("--quantity", fit_quantity, "area | volume | energy");
  cmd_fit->add_option("--k0", fit_k0, "smallest dyadic exponent (eps = 2^-k)");
  cmd_fit->add_option("--k1", fit_k1, "largest dyadic exponent");
  cmd_fit->add_option("--p", fit_p, "gradient power for --quantity energy");
  cmd_fit->add_option("--csv", fit_csv, "CSV output path (default <out or stdout>)");

  // lojasiewicz
  CommonOpts c_loj;
  int loj_amax = 6;
  auto* cmd_loj = app.add_subcommand("lojasiewicz",
                                     "curve-probe gradient exponent and derived report");
  add_common(cmd_loj, c_loj);
  cmd_loj->add_option("--amax", loj_amax, "largest direction exponent (default 6)");

  // sobolev
  CommonOpts c_sob;
  std::string sob_integrand = "grad_u_sq";
  double sob_param = 0.0;
  int sob_j0 = 2, sob_j1 = 18;
  auto* cmd_sob = app.add_subcommand(
      "sobolev", "dyadic-annuli integrability verdict for a singular integrand");
  add_common(cmd_sob, c_sob);
  cmd_sob->add_option("--integrand", sob_integrand,
                      "grad_u_sq|grad_u_p|grad_v_sq|abs_g|abs_g_p|abs_t|a1_hess|"
                      "a2_sum|a3_sum|a4_sum|inv_f_p|log_deriv_p|grad_sq_inv_f_p");
  cmd_sob->add_option("--param", sob_param, "p or delta for parametric integrands");
  cmd_sob->add_option("--j0", sob_j0, "first dyadic index");
  cmd_sob->add_option("--j1", sob_j1, "last dyadic index");

  // blowup-demo
  CommonOpts c_blow;
  auto* cmd_blow = app.add_subcommand("blowup-demo",
                                      "chart factorizations of the cusp z1^2 - z2^3");
  add_common(cmd_blow, c_blow, false);

  // reproduce
  CommonOpts c_rep;
  bool rep_quick = false;
  auto* cmd_rep = app.add_subcommand("reproduce", "run the acceptance suite");
  add_common(cmd_rep, c_rep, false);
  cmd_rep->add_flag("--quick", rep_quick, "reduced sample counts for smoke runs");

  CLI11_PARSE(app, argc, argv);
  Timer timer;

  if (cmd_eval->parsed()) {
    SparsePolynomial f = load_poly(c_eval, false);
    auto pt = parse_point(eval_point, f.dimension());
    Json j = base_report("eval", 0.0);
    Complex v = f.evaluate(pt);
    Gradient g = f.gradient(pt);
    j["config"] = Json{{"poly", Json::parse(emit_polynomial_json(f))}};
    Json res;
    res["value"] = {v.real(), v.imag()};
    Json comps = Json::array();
    for (const Complex& c : g.components) comps.push_back({c.real(), c.imag()});
    res["gradient"] = comps;
    res["gradient_norm"] = g.norm;
    res["hessian_frobenius"] = f.hessian_frobenius(pt);
    res["exact"] = true;
    if (!eval_singular_kind.empty()) {
      SingularKind k;
      std::string s = eval_singular_kind;
      if (s == "U") k = SingularKind::U;
      else if (s == "V") k = SingularKind::V;
      else if (s == "G") k = SingularKind::G;
      else if (s == "T") k = SingularKind::T;
      else if (s == "GRAD_U_NORM") k = SingularKind::GradUNorm;
      else if (s == "GRAD_V_NORM") k = SingularKind::GradVNorm;
      else fail(ErrorCode::ParseError, "unknown singular kind: " + s);
      Complex sv = eval_singular(k, f, pt);
      res["singular"] = {{"kind", s}, {"value", {sv.real(), sv.imag()}}};
    }
    j["result"] = res;
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_eval.out);
    return 0;
  }

  if (cmd_vol->parsed()) {
    SparsePolynomial f = load_poly(c_vol, true);
    SamplerConfig cfg = make_cfg(c_vol, f.dimension());
    EstimateResult est = mc_sublevel_volume(f, vol_eps, cfg);
    Json j = base_report("volume", 0.0);
    j["config"] = config_to_json(cfg, f.dimension());
    j["config"]["eps"] = vol_eps;
    j["result"] = to_json(est);
    if (auto kl = as_n2_monomial(f))
      j["reference"] = exact_value(monomial_sublevel_volume_exact(kl->first, kl->second, vol_eps));
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_vol.out);
    return 0;
  }

  if (cmd_lvl->parsed()) {
    SparsePolynomial f = load_poly(c_lvl, true);
    SamplerConfig cfg = make_cfg(c_lvl, f.dimension());
    double width = lvl_width > 0.0 ? lvl_width : lvl_eps / 20.0;
    WeightKind w = lvl_weight == "unit" ? WeightKind::Unit : WeightKind::GradF;
    EstimateResult est = mc_shell_surface_integral(f, ShellSpec{lvl_eps, width}, w, cfg);
    Json j = base_report("level-integral", 0.0);
    j["config"] = config_to_json(cfg, f.dimension());
    j["config"]["eps"] = lvl_eps;
    j["config"]["half_width"] = width;
    j["config"]["weight"] = lvl_weight;
    j["result"] = to_json(est);
    if (w == WeightKind::GradF) {
      if (auto kl = as_n2_monomial(f))
        j["reference"] = exact_value(monomial_I_exact_n2(kl->first, kl->second, lvl_eps));
    }
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_lvl.out);
    return 0;
  }

  if (cmd_en->parsed()) {
    SparsePolynomial f = load_poly(c_en, true);
    SamplerConfig cfg = make_cfg(c_en, f.dimension());
    EstimateResult est = mc_sublevel_energy(f, en_eps, en_p, cfg);
    Json j = base_report("energy", 0.0);
    j["config"] = config_to_json(cfg, f.dimension());
    j["config"]["eps"] = en_eps;
    j["config"]["p"] = en_p;
    j["result"] = to_json(est);
    if (en_p == 2.0) {
      if (auto kl = as_n2_monomial(f))
        j["reference"] = exact_value(monomial_J_exact_n2(kl->first, kl->second, en_eps));
    }
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_en.out);
    return 0;
  }

  if (cmd_fib->parsed()) {
    MonomialSpec A{MultiIndex(fib_exponents.begin(), fib_exponents.end())};
    Complex w = fib_w_abs > 0.0 ? Complex(fib_w_abs, 0.0) : Complex(fib_w_re, fib_w_im);
    SamplerConfig cfg = make_cfg(c_fib, static_cast<int>(A.exponents.size()) - 1);
    if (c_fib.sampling == "uniform") cfg.sampling = Sampling::LogRadial;
    EstimateResult est = mc_graph_fiber_volume(A, w, cfg);
    Json j = base_report("fiber-volume", 0.0);
    j["config"] = config_to_json(cfg, static_cast<int>(A.exponents.size()) - 1);
    j["config"]["exponents"] = A.exponents;
    j["config"]["w"] = {w.real(), w.imag()};
    j["result"] = to_json(est);
    if (A.exponents == MultiIndex{1, 1})
      j["reference"] = exact_value(fiber_volume_z1z2_exact(std::abs(w)));
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_fib.out);
    return 0;
  }

  if (cmd_fit->parsed()) {
    SparsePolynomial f = load_poly(c_fit, true);
    SamplerConfig cfg = make_cfg(c_fit, f.dimension());
    std::vector<FitPoint> pts;
    for (int k = fit_k0; k <= fit_k1; ++k) {
      double eps = std::pow(2.0, -k);
      EstimateResult est;
      if (fit_quantity == "area") {
        SamplerConfig c = cfg;
        if (c.sampling == Sampling::Uniform) c.sampling = Sampling::Auto;
        est = mc_shell_surface_integral(f, ShellSpec{eps, eps / 20.0}, WeightKind::Unit, c);
      } else if (fit_quantity == "volume") {
        est = mc_sublevel_volume(f, eps, cfg);
      } else if (fit_quantity == "energy") {
        est = mc_sublevel_energy(f, eps, fit_p, cfg);
      } else {
        fail(ErrorCode::ParseError, "unknown quantity: " + fit_quantity);
      }
      pts.push_back({eps, est.value, est.std_error});
    }
    ScalingFit fit = fit_power_law(pts);
    // CSV rows in dyadic-descending eps order.
    std::ostringstream csv;
    csv << "eps,value,std_error\n";
    std::vector<FitPoint> sorted = fit.points;
    std::sort(sorted.begin(), sorted.end(),
              [](const FitPoint& a, const FitPoint& b) { return a.eps > b.eps; });
    csv.precision(17);
    for (const FitPoint& p : sorted)
      csv << p.eps << "," << p.value << "," << p.std_error << "\n";
    if (fit_csv.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream cf(fit_csv);
      cf << csv.str();
    }
    Json j = base_report("fit-exponent", 0.0);
    j["config"] = config_to_json(cfg, f.dimension());
    j["config"]["quantity"] = fit_quantity;
    j["result"] = to_json(fit);
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_fit.out);
    return 0;
  }

  if (cmd_loj->parsed()) {
    SparsePolynomial f = load_poly(c_loj, true);
    LojasiewiczEstimate est = lojasiewicz_curve_probe(f, loj_amax, default_probe_grid());
    ExponentReport rep = exponent_report(est.alpha);
    Json j = base_report("lojasiewicz", 0.0);
    j["config"] = {{"amax", loj_amax}, {"poly", Json::parse(emit_polynomial_json(f))}};
    j["result"] = to_json(est);
    j["result"]["gamma"] = rep.gamma;
    j["result"]["tau"] = rep.tau;
    j["result"]["cse_lower"] = rep.cse_lower;
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_loj.out);
    return 0;
  }

  if (cmd_sob->parsed()) {
    SparsePolynomial f = load_poly(c_sob, true);
    SamplerConfig cfg = make_cfg(c_sob, f.dimension());
    IntegrandSpec spec = parse_integrand(sob_integrand, sob_param);
    AnnulusLedger led = dyadic_integrability_test(f, spec, sob_j0, sob_j1, cfg);
    Json j = base_report("sobolev", 0.0);
    j["config"] = config_to_json(cfg, f.dimension());
    j["config"]["integrand"] = sob_integrand;
    j["config"]["param"] = sob_param;
    j["result"] = to_json(led);
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_sob.out);
    return led.verdict == Verdict::Inconclusive ? 3 : 0;
  }

  if (cmd_blow->parsed()) {
    Json j = base_report("blowup-demo", 0.0);
    Json charts = Json::array();
    for (int id : {1, 2}) {
      PullbackFactorization pf = pullback_factorization(BlowupChart{id});
      charts.push_back({{"chart", id},
                        {"exceptional_exponent", pf.exceptional_exponent},
                        {"strict_transform", Json::parse(emit_polynomial_json(pf.strict_transform))},
                        {"max_residual", pf.max_residual}});
    }
    j["result"] = {{"charts", charts},
                   {"resolved_model_integral_0.1", resolved_A1_model_integral(0.1)}};
    j["wall_clock_seconds"] = timer.seconds();
    emit(j, c_blow.out);
    return 0;
  }

  if (cmd_rep->parsed()) {
    AcceptanceOptions opts;
    opts.workers = c_rep.workers;
    opts.scale = rep_quick ? 100 : 1;
    auto results = run_acceptance(opts);
    Json j = acceptance_report(results, opts);
    emit(j, c_rep.out);
    int fails = 0;
    for (const auto& r : results) {
      std::fprintf(stderr, "criterion %02d [%s] %s\n", r.id, r.pass ? "PASS" : "FAIL",
                   r.name.c_str());
      if (!r.pass) ++fails;
    }
    return fails == 0 ? 0 : 1;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const LabError& e) {
    Json err;
    err["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = {{"code", "INTERNAL"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
}
