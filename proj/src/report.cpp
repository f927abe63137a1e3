#include "lslab/report.hpp"

namespace lslab {

Json to_json(const EstimateResult& r) {
  Json j;
  j["value"] = r.value;
  j["std_error"] = r.std_error;
  j["n_used"] = r.n_used;
  j["n_rejected"] = r.n_rejected;
  j["n_hits"] = r.n_hits;
  if (r.low_discrepancy) j["low_discrepancy"] = true;
  return j;
}

Json to_json(const ScalingFit& f) {
  Json j;
  j["exponent"] = f.exponent;
  j["log_constant"] = f.log_constant;
  j["r_squared"] = f.r_squared;
  Json pts = Json::array();
  for (const FitPoint& p : f.points)
    pts.push_back({{"eps", p.eps}, {"value", p.value}, {"std_error", p.std_error}});
  j["points"] = pts;
  return j;
}

Json to_json(const LojasiewiczEstimate& e) {
  Json j;
  j["alpha"] = e.alpha;
  j["beta"] = e.beta();
  j["best_direction"] = e.best_direction;
  j["clamped"] = e.clamped;
  Json dirs = Json::array();
  for (const DirectionProbe& d : e.per_direction)
    dirs.push_back({{"direction", d.direction}, {"slope", d.slope}});
  j["per_direction"] = dirs;
  return j;
}

Json to_json(const RescaleRecord& r) {
  Json j;
  j["scale_c"] = r.scale_c;
  j["sup_sample_abs"] = r.sup_sample_abs;
  j["n_probe"] = r.n_probe;
  return j;
}

Json to_json(const AnnulusLedger& l) {
  Json j;
  j["j0"] = l.j0;
  j["j1"] = l.j1;
  j["verdict"] = verdict_name(l.verdict);
  if (l.verdict == Verdict::Convergent) j["extrapolated_total"] = l.extrapolated_total;
  if (l.rescale) j["rescale"] = to_json(*l.rescale);
  if (l.exploratory) j["exploratory"] = true;
  Json terms = Json::array();
  for (const AnnulusTerm& t : l.terms) {
    Json e;
    e["j"] = t.j;
    e["value"] = t.value;
    e["std_error"] = t.std_error;
    e["n_used"] = t.n_used;
    e["n_rejected"] = t.n_rejected;
    e["n_hits"] = t.n_hits;
    if (t.empty) e["empty"] = true;
    terms.push_back(e);
  }
  j["terms"] = terms;
  j["partial_sums"] = l.partial_sums;
  return j;
}

Json exact_value(double v) { return Json{{"value", v}, {"exact", true}}; }

Json domain_to_json(const PolyDomain& d, int dimension) {
  Json j;
  if (d.radii.empty()) {
    j["kind"] = "polydisc";
    j["radii"] = std::vector<double>(static_cast<size_t>(dimension), 1.0);
    return j;
  }
  j["kind"] = d.kind == PolyDomain::Kind::Polydisc ? "polydisc" : "ball";
  j["radii"] = d.radii;
  return j;
}

Json config_to_json(const SamplerConfig& cfg, int dimension) {
  Json j;
  j["seed"] = cfg.seed;
  j["samples"] = cfg.n_samples;
  j["workers"] = cfg.n_workers;
  j["domain"] = domain_to_json(cfg.domain, dimension);
  const char* s = "uniform";
  switch (cfg.sampling) {
    case Sampling::Uniform: s = "uniform"; break;
    case Sampling::LogRadial: s = "log_radial"; break;
    case Sampling::Fiber: s = "fiber"; break;
    case Sampling::Auto: s = "auto"; break;
    case Sampling::Halton: s = "halton"; break;
  }
  j["sampling"] = s;
  return j;
}

}  // namespace lslab
