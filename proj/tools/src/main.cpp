// SPDX-License-Identifier: Apache-2.0
//
// boolgrow: classify gates, predict and iterate growth processes, dump
// spectra, compute iteration bounds, sample formulas, run the check suite.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "boolgrow/analysis.hpp"
#include "boolgrow/connective.hpp"
#include "boolgrow/detail/rng.hpp"
#include "boolgrow/json_io.hpp"
#include "boolgrow/process.hpp"
#include "boolgrow/spectrum.hpp"

namespace {

using boolgrow::BudgetError;
using ordered_json = nlohmann::ordered_json;

constexpr int indent = 2;

struct CommonOpts {
  int n = 2;
  std::string preset;
  std::string inline_json;
  std::string file;
  std::string support = "proj";
  std::string out;
  std::string format = "json";
};

void add_connective_flags(CLI::App* cmd, CommonOpts& o) {
  auto* a = cmd->add_option("--connective", o.preset,
                            "named preset (and2 or2 xor2 and3 or3 xor3 maj3 "
                            "mux slow3 valiant4)");
  auto* b = cmd->add_option("--connective-json", o.inline_json,
                            "inline JSON {\"arity\":k,\"table\":\"hex\"}");
  auto* c = cmd->add_option("--connective-file", o.file,
                            "path to a connective JSON file");
  a->excludes(b)->excludes(c);
  b->excludes(c);
}

void add_process_flags(CLI::App* cmd, CommonOpts& o) {
  add_connective_flags(cmd, o);
  cmd->add_option("--n", o.n, "number of ground variables")->required();
  cmd->add_option("--support", o.support,
                  "comma list from proj,neg,const0,const1 (proj implied)");
}

void add_output_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--out", o.out, "output path (default stdout)");
  cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

boolgrow::Connective connective_from_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  int k = j.at("arity").get<int>();
  auto t = boolgrow::TruthTable::from_hex(k, j.at("table").get<std::string>());
  std::string name = j.value("name", std::string("custom"));
  return boolgrow::make_connective(t, name);
}

boolgrow::Connective load_connective(const CommonOpts& o) {
  int given = (!o.preset.empty()) + (!o.inline_json.empty()) + (!o.file.empty());
  if (given != 1)
    throw std::invalid_argument(
        "give exactly one of --connective/--connective-json/--connective-file");
  if (!o.preset.empty()) return boolgrow::preset_connective(o.preset);
  if (!o.inline_json.empty()) return connective_from_json_text(o.inline_json);
  std::ifstream in(o.file);
  if (!in) throw std::invalid_argument("cannot open " + o.file);
  std::stringstream ss;
  ss << in.rdbuf();
  return connective_from_json_text(ss.str());
}

boolgrow::SupportSpec parse_support(const std::string& text, int n) {
  boolgrow::SupportSpec s;
  s.n = n;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty() || tok == "proj") continue; // projections are always in
    if (tok == "neg")
      s.negations = true;
    else if (tok == "const0")
      s.const0 = true;
    else if (tok == "const1")
      s.const1 = true;
    else
      throw std::invalid_argument("unknown support token: " + tok);
  }
  return s;
}

boolgrow::ProcessSpec make_spec(const CommonOpts& o) {
  return {parse_support(o.support, o.n), load_connective(o)};
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + o.out);
  out << text;
}

std::string leaf_name(const boolgrow::SupportSpec& s, std::uint64_t pick) {
  std::uint64_t nn = static_cast<std::uint64_t>(s.n);
  if (pick < nn) return "x" + std::to_string(pick + 1);
  pick -= nn;
  if (s.negations) {
    if (pick < nn) return "!x" + std::to_string(pick + 1);
    pick -= nn;
  }
  if (s.const0) {
    if (pick == 0) return "0";
    --pick;
  }
  return "1";
}

// Formula tree of sample 0, drawn with the same leaf stream the sampler
// consumes, so it is the formula whose table the sample reports.
std::string formula_tree(const boolgrow::ProcessSpec& spec, int depth,
                         std::uint64_t seed) {
  boolgrow::detail::LeafPicker lp(
      boolgrow::detail::sample_stream(seed, 0),
      static_cast<std::uint64_t>(spec.support.member_count()));
  std::string out;
  auto rec = [&](auto&& self, int d) -> void {
    if (d == 0) {
      out += leaf_name(spec.support, lp.pick());
      return;
    }
    out += "(" + spec.alpha.name;
    for (int j = 0; j < spec.alpha.arity(); ++j) {
      out += ' ';
      self(self, d - 1);
    }
    out += ")";
  };
  rec(rec, depth);
  return out;
}

int run_classify(const CommonOpts& o) {
  boolgrow::Connective c = load_connective(o);
  ordered_json j;
  j["name"] = c.name;
  j["arity"] = c.arity();
  j["table"] = c.table.to_hex();
  j["properties"] = ordered_json::parse(boolgrow::to_json(c.props));
  boolgrow::CharPoly cp = boolgrow::char_poly(c);
  j["char_poly"] = ordered_json::parse(boolgrow::to_json(cp));
  j["fixed_point"] = ordered_json::parse(boolgrow::to_json(boolgrow::fixed_point(cp)));
  try {
    j["convergence_class"] = ordered_json::parse(
        boolgrow::to_json(boolgrow::convergence_class(c)));
  } catch (const std::exception&) {
    j["convergence_class"] = nullptr;
  }
  if (c.arity() <= 16)
    j["spectral_profile"] =
        ordered_json::parse(boolgrow::to_json(boolgrow::spectral_profile(c)));
  emit(o, j.dump(indent));
  return 0;
}

int run_predict(const CommonOpts& o) {
  emit(o, boolgrow::to_json(boolgrow::predict(make_spec(o)), indent));
  return 0;
}

int run_iterate(const CommonOpts& o, int steps, int every) {
  boolgrow::ProcessSpec spec = make_spec(o);
  std::vector<boolgrow::Distribution> snaps;
  boolgrow::Distribution final = boolgrow::iterate_exact(
      spec, steps, [&](int i, const boolgrow::Distribution& d) {
        if (every > 0 && i % every == 0 && i != steps) snaps.push_back(d);
      });
  snaps.push_back(final);
  if (o.format == "csv") {
    std::ostringstream ss;
    boolgrow::write_csv(ss, snaps.back());
    emit(o, ss.str());
    return 0;
  }
  ordered_json j;
  j["steps"] = steps;
  ordered_json arr = ordered_json::array();
  for (const auto& d : snaps) arr.push_back(ordered_json::parse(boolgrow::to_json(d)));
  j["snapshots"] = std::move(arr);
  emit(o, j.dump(indent));
  return 0;
}

int run_sample(const CommonOpts& o, int depth, std::uint64_t samples,
               std::uint64_t seed, int threads, bool emit_formula) {
  boolgrow::ProcessSpec spec = make_spec(o);
  boolgrow::Distribution d =
      boolgrow::monte_carlo(spec, depth, samples, seed, threads);
  if (o.format == "csv") {
    if (emit_formula)
      throw std::invalid_argument("--emit-formula requires --format json");
    std::ostringstream ss;
    boolgrow::write_csv(ss, d);
    emit(o, ss.str());
    return 0;
  }
  ordered_json j = ordered_json::parse(boolgrow::to_json(d));
  j["seed"] = seed;
  j["samples"] = samples;
  if (emit_formula) {
    j["formula"] = formula_tree(spec, depth, seed);
    j["formula_table"] =
        boolgrow::sample_formula(spec, depth, seed, 0).to_hex();
  }
  emit(o, j.dump(indent));
  return 0;
}

int run_spectrum(const CommonOpts& o, const std::string& in, int steps,
                 bool trajectory) {
  if (!in.empty() && trajectory)
    throw std::invalid_argument("--trajectory needs a process, not --in");
  if (trajectory) {
    boolgrow::ProcessSpec spec = make_spec(o);
    std::ostringstream ss;
    ss << "iteration,max_abs\n";
    boolgrow::iterate_exact(spec, steps,
                            [&](int i, const boolgrow::Distribution& d) {
                              boolgrow::Spectrum sp = boolgrow::transform(d);
                              double mx = 0;
                              for (std::size_t w = 1; w < sp.values.size(); ++w)
                                mx = std::max(mx, std::fabs(sp.values[w]));
                              char buf[64];
                              std::snprintf(buf, sizeof buf, "%.17g", mx);
                              ss << i << ',' << buf << '\n';
                            });
    emit(o, ss.str());
    return 0;
  }
  boolgrow::Distribution d;
  if (!in.empty()) {
    std::ifstream f(in);
    if (!f) throw std::invalid_argument("cannot open " + in);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    // accept either a bare distribution or an `iterate` snapshot file,
    // in which case the last snapshot is transformed
    ordered_json j = ordered_json::parse(text);
    if (j.contains("snapshots")) {
      if (j["snapshots"].empty())
        throw std::invalid_argument("snapshot file has no distributions");
      text = j["snapshots"].back().dump();
    }
    d = boolgrow::distribution_from_json(text);
  } else {
    d = boolgrow::iterate_exact(make_spec(o), steps);
  }
  boolgrow::Spectrum sp = boolgrow::transform(d);
  if (o.format == "csv") {
    std::ostringstream ss;
    boolgrow::write_csv(ss, sp);
    emit(o, ss.str());
  } else {
    emit(o, boolgrow::to_json(sp, indent));
  }
  return 0;
}

int run_bounds(const CommonOpts& o, double eps) {
  boolgrow::ProcessSpec spec = make_spec(o);
  ordered_json j;
  j["bound"] = ordered_json::parse(
      boolgrow::to_json(boolgrow::theoretical_iterations(spec, eps)));
  try {
    j["constants"] = ordered_json::parse(
        boolgrow::to_json(boolgrow::bound_constants(spec.alpha, o.n)));
  } catch (const std::exception&) {
    j["constants"] = nullptr;
  }
  emit(o, j.dump(indent));
  return 0;
}

int run_converge(const CommonOpts& o, double eps, int max_iters,
                 const std::string& metric) {
  boolgrow::ProcessSpec spec = make_spec(o);
  boolgrow::ConvergenceReport rep = boolgrow::empirical_convergence(
      spec, eps, max_iters,
      metric == "tv" ? boolgrow::Metric::TotalVariation
                     : boolgrow::Metric::MaxAbs);
  if (o.format == "csv") {
    std::ostringstream ss;
    boolgrow::write_trajectory_csv(ss, rep.trajectory);
    emit(o, ss.str());
  } else {
    emit(o, boolgrow::to_json(rep, indent));
  }
  return 0;
}

int run_verify(const CommonOpts& o, int kmax, int nmax, bool ci) {
  std::vector<boolgrow::CheckResult> results = boolgrow::verify_all(kmax, nmax);
  bool all = true;
  ordered_json arr = ordered_json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back(ordered_json::parse(boolgrow::to_json(r)));
  }
  ordered_json j;
  j["all_pass"] = all;
  j["checks"] = std::move(arr);
  emit(o, j.dump(indent));
  return ci && !all ? 3 : 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-formula growth processes: exact iteration, spectra, "
               "limit prediction, sampling"};
  app.require_subcommand(1);

  CommonOpts o;
  int steps = 10, every = 1, depth = 8, max_iters = 60;
  std::uint64_t samples = 100000, seed = 0;
  int threads = 0, kmax = 4, nmax = 2;
  double eps = 1e-6;
  bool emit_formula = false, ci = false, trajectory = false;
  std::string in, metric = "maxabs";

  auto* classify = app.add_subcommand("classify", "gate properties and polynomial");
  add_connective_flags(classify, o);
  add_output_flags(classify, o);

  auto* predict = app.add_subcommand("predict", "limiting distribution prediction");
  add_process_flags(predict, o);
  add_output_flags(predict, o);

  auto* iterate = app.add_subcommand("iterate", "exact distribution iteration");
  add_process_flags(iterate, o);
  add_output_flags(iterate, o);
  iterate->add_option("--steps", steps, "iterations to run");
  iterate->add_option("--every", every, "snapshot stride (0 = final only)");

  auto* sample = app.add_subcommand("sample", "Monte Carlo over random formulas");
  add_process_flags(sample, o);
  add_output_flags(sample, o);
  sample->add_option("--depth", depth, "formula depth");
  sample->add_option("--samples", samples, "number of samples");
  sample->add_option("--seed", seed, "RNG seed")->required();
  sample->add_option("--threads", threads,
                     "worker bound (default BOOLGROW_THREADS or hardware)");
  sample->add_flag("--emit-formula", emit_formula,
                   "include sample 0's formula tree");

  auto* spectrum = app.add_subcommand("spectrum", "Fourier coefficients");
  add_process_flags(spectrum, o);
  add_output_flags(spectrum, o);
  spectrum->add_option("--steps", steps, "iterations before transforming");
  spectrum->add_option("--in", in, "transform a saved distribution JSON");
  spectrum->add_flag("--trajectory", trajectory,
                     "CSV of max |coefficient| per iteration");
  spectrum->get_option("--n")->required(false);

  auto* bounds = app.add_subcommand("bounds", "iteration bounds and decay constants");
  add_process_flags(bounds, o);
  add_output_flags(bounds, o);
  bounds->add_option("--eps", eps, "target accuracy");

  auto* verify = app.add_subcommand("verify", "run the structural check suite");
  add_output_flags(verify, o);
  verify->add_option("--kmax", kmax, "max gate arity (exhaustive to 4, sampled at 5)");
  verify->add_option("--nmax", nmax, "max variable count for spectral checks");
  verify->add_flag("--ci", ci, "exit 3 unless every check passes");

  auto* converge = app.add_subcommand("converge", "measure convergence to the prediction");
  add_process_flags(converge, o);
  add_output_flags(converge, o);
  converge->add_option("--eps", eps, "stop once within eps");
  converge->add_option("--max-iters", max_iters, "iteration cap");
  converge->add_option("--metric", metric, "maxabs or tv")
      ->check(CLI::IsMember({"maxabs", "tv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(classify)) return run_classify(o);
    if (app.got_subcommand(predict)) return run_predict(o);
    if (app.got_subcommand(iterate)) return run_iterate(o, steps, every);
    if (app.got_subcommand(sample))
      return run_sample(o, depth, samples, seed, threads, emit_formula);
    if (app.got_subcommand(spectrum)) return run_spectrum(o, in, steps, trajectory);
    if (app.got_subcommand(bounds)) return run_bounds(o, eps);
    if (app.got_subcommand(verify)) return run_verify(o, kmax, nmax, ci);
    if (app.got_subcommand(converge)) return run_converge(o, eps, max_iters, metric);
  } catch (const BudgetError& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
