// SPDX-License-Identifier: Apache-2.0
#include "boolgrow/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace boolgrow {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j, int indent) {
  return indent < 0 ? j.dump() : j.dump(indent);
}

// NaN and infinities are not representable in JSON; use null.
ordered_json num_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

const char* kind_name(PredictionKind k) {
  switch (k) {
  case PredictionKind::Concentrated: return "concentrated";
  case PredictionKind::UniformOnSet: return "uniform-on-set";
  case PredictionKind::Alternating: return "alternating";
  case PredictionKind::Degenerate: return "degenerate";
  case PredictionKind::Unknown: return "unknown";
  }
  return "unknown";
}

const char* family_name(SetFamily f) {
  switch (f) {
  case SetFamily::Threshold: return "threshold";
  case SetFamily::Slice: return "slice";
  case SetFamily::SelfDualSlice: return "self-dual-slice";
  case SetFamily::SelfDual: return "self-dual";
  case SetFamily::AllFunctions: return "all-functions";
  case SetFamily::BiPreserving: return "bi-preserving";
  case SetFamily::AllLinear: return "all-affine";
  case SetFamily::LinearConstrained: return "affine-constrained";
  case SetFamily::ExplicitSet: return "explicit";
  }
  return "explicit";
}

ordered_json descriptor_json(const SetDescriptor& sd) {
  ordered_json j;
  j["family"] = family_name(sd.family);
  j["domain"] = domain_name(sd.domain);
  j["n"] = sd.n;
  if (sd.family == SetFamily::Threshold || sd.family == SetFamily::Slice ||
      sd.family == SetFamily::SelfDualSlice)
    j["param"] = sd.param;
  if (sd.c0) j["constant_term"] = *sd.c0;
  if (sd.var_parity) j["variable_parity"] = *sd.var_parity;
  if (sd.family == SetFamily::ExplicitSet) j["ids"] = sd.ids;
  j["description"] = sd.describe();
  return j;
}

ordered_json distribution_json(const Distribution& d) {
  ordered_json j;
  j["domain"] = domain_name(d.domain);
  j["n"] = d.n;
  j["iteration"] = d.iteration;
  ordered_json entries = ordered_json::array();
  for (const auto& [id, p] : d.entries)
    entries.push_back(ordered_json::array({id, p}));
  j["entries"] = std::move(entries);
  return j;
}

void put_g17(std::ostream& os, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

} // namespace

std::string domain_name(Domain d) {
  return d == Domain::Linear ? "linear" : "general";
}

Domain domain_from_name(const std::string& name) {
  if (name == "linear") return Domain::Linear;
  if (name == "general") return Domain::General;
  throw std::invalid_argument("unknown domain name: " + name);
}

std::string to_json(const Distribution& d, int indent) {
  return dump(distribution_json(d), indent);
}

std::string to_json(const Spectrum& sp, int indent) {
  ordered_json j;
  j["domain"] = domain_name(sp.domain);
  j["n"] = sp.n;
  j["iteration"] = sp.iteration;
  j["values"] = sp.values;
  return dump(j, indent);
}

std::string to_json(const ClosureReport& cr, int indent) {
  ordered_json j;
  j["domain"] = domain_name(cr.domain);
  j["n"] = cr.n;
  j["closed_at"] = cr.closed_at;
  j["period"] = cr.period;
  j["union"] = cr.union_ids;
  j["even"] = cr.even_ids;
  j["odd"] = cr.odd_ids;
  return dump(j, indent);
}

std::string to_json(const PropertySet& props, int indent) {
  ordered_json j;
  j["monotone"] = props.monotone;
  j["balanced"] = props.balanced;
  j["linear"] = props.linear;
  j["self_dual"] = props.self_dual;
  j["bi_preserving"] = props.bi_preserving;
  j["depends_on_all"] = props.depends_on_all;
  j["threshold_index"] =
      props.threshold_index ? ordered_json(*props.threshold_index) : nullptr;
  j["slice_level"] =
      props.slice_level ? ordered_json(*props.slice_level) : nullptr;
  return dump(j, indent);
}

std::string to_json(const CharPoly& cp, int indent) {
  ordered_json j;
  j["arity"] = cp.arity();
  ordered_json counts = ordered_json::array();
  ordered_json betas = ordered_json::array();
  for (int i = 0; i <= cp.arity(); ++i) {
    counts.push_back(cp.count(i));
    betas.push_back(cp.beta_fraction(i));
  }
  j["counts"] = std::move(counts);
  j["betas"] = std::move(betas);
  j["balanced"] = cp.balanced_exact();
  return dump(j, indent);
}

std::string to_json(const FixedPointReport& fp, int indent) {
  ordered_json j;
  switch (fp.kind) {
  case FixedPointReport::Kind::AboveEverywhere: j["kind"] = "above"; break;
  case FixedPointReport::Kind::BelowEverywhere: j["kind"] = "below"; break;
  case FixedPointReport::Kind::Interior: j["kind"] = "interior"; break;
  case FixedPointReport::Kind::Identity: j["kind"] = "identity"; break;
  }
  if (fp.kind == FixedPointReport::Kind::Interior) {
    j["s"] = fp.s;
    j["residual"] = fp.residual;
    j["slope"] = fp.slope;
  }
  return dump(j, indent);
}

std::string to_json(const ConvergenceClassReport& cc, int indent) {
  ordered_json j;
  j["class"] = cc.cls == ConvergenceClass::Fast ? "fast" : "slow";
  j["used_dual"] = cc.used_dual;
  if (!cc.note.empty()) j["note"] = cc.note;
  return dump(j, indent);
}

std::string to_json(const SpectralProfile& prof, int indent) {
  ordered_json j;
  j["s"] = prof.s;
  j["s_zero"] = prof.s_zero;
  j["max_abs"] = prof.max_abs;
  j["a3"] = prof.a3;
  j["parseval"] = prof.parseval;
  return dump(j, indent);
}

std::string to_json(const BoundConstants& bc, int indent) {
  ordered_json j;
  j["k"] = bc.k;
  j["n"] = bc.n;
  j["a"] = bc.a;
  j["log2_inv_a"] = bc.log2_inv_a;
  j["i2"] = bc.i2;
  j["i3"] = bc.i_d(3);
  j["i4"] = bc.i_d(4);
  j["onset"] = num_or_null(bc.onset);
  return dump(j, indent);
}

std::string to_json(const SetDescriptor& sd, int indent) {
  return dump(descriptor_json(sd), indent);
}

std::string to_json(const Prediction& pred, int indent) {
  ordered_json j;
  j["kind"] = kind_name(pred.kind);
  j["tag"] = pred.tag;
  j["set"] = pred.set ? descriptor_json(*pred.set) : ordered_json(nullptr);
  j["even_set"] =
      pred.even_set ? descriptor_json(*pred.even_set) : ordered_json(nullptr);
  j["odd_set"] =
      pred.odd_set ? descriptor_json(*pred.odd_set) : ordered_json(nullptr);
  j["note"] = pred.note;
  return dump(j, indent);
}

std::string to_json(const IterationBound& b, int indent) {
  ordered_json j;
  j["tag"] = b.tag;
  j["iterations"] = num_or_null(b.value);
  j["has_unknown_constant"] = b.has_unknown_constant;
  j["note"] = b.note;
  return dump(j, indent);
}

std::string to_json(const ConvergenceReport& rep, int indent) {
  ordered_json j;
  j["prediction"] = ordered_json::parse(to_json(rep.prediction));
  j["achieved"] = rep.achieved;
  j["iterations_measured"] = rep.iterations_measured;
  j["final_distance"] = rep.final_distance;
  j["trajectory"] = rep.trajectory;
  return dump(j, indent);
}

std::string to_json(const CheckResult& cr, int indent) {
  ordered_json j;
  j["lemma"] = cr.lemma;
  j["population"] = cr.population;
  j["pass"] = cr.pass;
  j["worst_margin"] = num_or_null(cr.worst_margin);
  j["witness"] = cr.witness;
  return dump(j, indent);
}

Distribution distribution_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  Distribution d;
  d.domain = domain_from_name(j.at("domain").get<std::string>());
  d.n = j.at("n").get<int>();
  d.iteration = j.at("iteration").get<int>();
  for (const auto& e : j.at("entries")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("distribution entry must be [id, probability]");
    d.entries.push_back(
        {e[0].get<std::uint64_t>(), e[1].get<double>()});
  }
  d.sort_and_compact();
  return d;
}

void write_csv(std::ostream& os, const Distribution& d) {
  os << "id,probability\n";
  for (const auto& [id, p] : d.entries) {
    os << id << ',';
    put_g17(os, p);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const Spectrum& sp) {
  os << "coefficient,value\n";
  for (std::size_t w = 0; w < sp.values.size(); ++w) {
    os << w << ',';
    put_g17(os, sp.values[w]);
    os << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const std::vector<double>& dist) {
  os << "iteration,distance\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    os << i << ',';
    put_g17(os, dist[i]);
    os << '\n';
  }
}

} // namespace boolgrow
