#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "gaugewalk/error.hpp"
#include "gaugewalk/forms.hpp"
#include "gaugewalk/gauge.hpp"
#include "gaugewalk/io.hpp"
#include "gaugewalk/spectral.hpp"
#include "gaugewalk/walk.hpp"

namespace gaugewalk::cli {

namespace {

using nlohmann::ordered_json;
using io::format_double;

const Input& single_input(const Options& opt, std::vector<Input>& store) {
  if (opt.inputs.size() != 1) throw UsageError("expected exactly one --input");
  store.push_back(load_input(opt.inputs[0], opt));
  return store.back();
}

const dsl::ExperimentSpec& need_spec(const Input& in) {
  if (!in.spec) throw UsageError("\"" + in.path + "\" is not a .gw experiment file");
  return *in.spec;
}

int evolve_steps(const dsl::ExperimentSpec& spec) {
  for (const auto& r : spec.runs)
    if (r.kind == dsl::RunDecl::Kind::evolve) return std::max(r.steps, 1);
  return 1;
}

const dsl::RunDecl& find_run(const dsl::ExperimentSpec& spec, dsl::RunDecl::Kind kind, const char* name) {
  for (const auto& r : spec.runs)
    if (r.kind == kind) return r;
  raise(ErrorCode::InvalidArgument, std::string("experiment has no \"run ") + name + "\" line");
}

forms::DiscreteForm load_field(const Input& in) {
  if (in.spec) return dsl::field_form(*in.spec, evolve_steps(*in.spec));
  return io::form_from_json(in.text);
}

gauge::TranslationSystem load_system(const Input& in) {
  if (in.spec) return dsl::build_system(*in.spec, evolve_steps(*in.spec));
  return io::system_from_json(in.text);
}

void emit(const Options& opt, const ordered_json& j, const std::string& text) {
  if (opt.json) std::cout << j.dump() << '\n';
  else std::cout << text;
}

walk::CoupledWalk coupled_walk(const dsl::ExperimentSpec& spec, int steps) {
  return walk::minimal_couple(dsl::build_decomposition(spec), dsl::build_system(spec, steps));
}

std::string summary_json(const walk::Trajectory& tr) {
  std::ostringstream os;
  os << "{\n \"steps\": " << (tr.norms.empty() ? 0 : tr.norms.size() - 1) << ",\n";
  os << " \"norm_drift\": " << format_double(tr.norm_drift) << ",\n";
  os << " \"return_prob\": [";
  for (std::size_t i = 0; i < tr.return_probability.size(); ++i)
    os << (i ? ", " : "") << format_double(tr.return_probability[i]);
  os << "],\n \"variance\": [";
  for (std::size_t i = 0; i < tr.variance.size(); ++i) {
    os << (i ? ", " : "") << '[';
    for (std::size_t a = 0; a < tr.variance[i].size(); ++a) os << (a ? ", " : "") << format_double(tr.variance[i][a]);
    os << ']';
  }
  os << "]\n}\n";
  return os.str();
}

std::string trajectory_csv(const LatticeWindow& w, const walk::Trajectory& tr) {
  std::ostringstream os;
  os << 't';
  for (int a = 0; a < w.dims(); ++a) os << ",x" << a + 1;
  os << ",prob\n";
  for (std::size_t t = 0; t < tr.distributions.size(); ++t)
    for (std::size_t x = 0; x < w.size(); ++x) {
      const double p = tr.distributions[t][x];
      if (p == 0.0) continue;
      os << t;
      for (int a = 0; a < w.dims(); ++a) os << ',' << static_cast<long>(w.position(x, a));
      os << ',' << format_double(p) << '\n';
    }
  return os.str();
}

}  // namespace

int check_field(const Options& opt) {
  std::vector<Input> store;
  const Input& in = single_input(opt, store);
  Manifest manifest("check-field");
  manifest.add_input(in);
  const forms::DiscreteForm F = load_field(in);
  if (F.degree() < 1) raise(ErrorCode::InvalidArgument, "check-field needs a form of degree at least 1");

  double violation = 0.0;
  if (F.degree() < F.window().dims()) violation = forms::max_norm(forms::exterior_derivative(F));
  const bool closed = violation <= opt.tol;
  std::optional<std::string> flux;
  if (F.degree() == 2) flux = forms::flux_violation(F, opt.tol);

  ordered_json j{{"closed", closed}, {"max_violation", violation}, {"degree", F.degree()}};
  std::string text = std::string("closed: ") + (closed ? "true" : "false") + "\n";
  text += "max violation: " + format_double(violation) + "\n";
  if (F.degree() == 2 && F.window().any_periodic()) {
    j["flux_quantized"] = !flux.has_value();
    text += std::string("flux quantized: ") + (flux ? "false (" + *flux + ")" : "true") + "\n";
  }
  emit(opt, j, text);
  manifest.finish(output_dir(opt, &in), opt);
  return 0;
}

int solve_potential(const Options& opt) {
  std::vector<Input> store;
  const Input& in = single_input(opt, store);
  Manifest manifest("solve-potential");
  manifest.add_input(in);
  const forms::DiscreteForm F = load_field(in);
  if (F.degree() != 2) raise(ErrorCode::InvalidArgument, "solve-potential needs a 2-form");
  const forms::DiscreteForm A = forms::solve_potential(F, opt.tol);
  const double residual = forms::max_distance(forms::exterior_derivative(A), F);

  const std::string dir = output_dir(opt, &in);
  const std::string path = manifest.write(dir, "potential.json", io::form_to_json(A) + "\n");
  emit(opt, ordered_json{{"potential", path}, {"residual", residual}},
       "potential: " + path + "\nresidual: " + format_double(residual) + "\n");
  manifest.finish(dir, opt);
  return 0;
}

int gauge_check(const Options& opt) {
  if (opt.inputs.size() != 2) throw UsageError("gauge-check expects two --input files");
  const Input a = load_input(opt.inputs[0], opt);
  const Input b = load_input(opt.inputs[1], opt);
  Manifest manifest("gauge-check");
  manifest.add_input(a);
  manifest.add_input(b);
  const gauge::TranslationSystem Ta = load_system(a);
  const gauge::TranslationSystem Tb = load_system(b);
  const gauge::Equivalence eq = gauge::gauge_equivalence(Ta, Tb, opt.tol);

  const std::string dir = output_dir(opt, &a);
  ordered_json j{{"equivalent", eq.equivalent}};
  std::string text;
  if (eq.equivalent) {
    const std::string path = manifest.write(dir, "witness.json", io::form_to_json(eq.witness->chi) + "\n");
    j["witness"] = path;
    j["residual"] = eq.residual;
    text = "equivalent\nwitness: " + path + "\nresidual: " + format_double(eq.residual) + "\n";
  } else {
    j["reason"] = eq.reason;
    text = "not equivalent: " + eq.reason + "\n";
  }
  emit(opt, j, text);
  manifest.finish(dir, opt);
  return 0;
}

int couple(const Options& opt) {
  std::vector<Input> store;
  const Input& in = single_input(opt, store);
  const dsl::ExperimentSpec& spec = need_spec(in);
  if (opt.format != "json" && opt.format != "bin") throw UsageError("--format must be json or bin");
  if (opt.time < 0) throw UsageError("--time must be non-negative");
  Manifest manifest("couple");
  manifest.add_input(in);

  const int steps = std::max<long>(evolve_steps(spec), opt.time + 1);
  const walk::CoupledWalk w = coupled_walk(spec, steps);
  const walk::Matrix M = w.to_matrix(opt.time);
  const double residual = walk::unitarity_residual(M);

  const std::string dir = output_dir(opt, &in);
  const std::string path = opt.format == "bin"
                               ? manifest.write(dir, "matrix.bin", io::matrix_to_binary(M, w.space(), w.d()))
                               : manifest.write(dir, "matrix.json", io::matrix_to_json(M, w.space(), w.d()) + "\n");
  emit(opt, ordered_json{{"matrix", path}, {"dimension", M.rows()}, {"unitarity_residual", residual}},
       "matrix: " + path + "\ndimension: " + std::to_string(M.rows()) +
           "\nunitarity residual: " + format_double(residual) + "\n");
  manifest.finish(dir, opt);
  return 0;
}

int evolve(const Options& opt) {
  std::vector<Input> store;
  const Input& in = single_input(opt, store);
  const dsl::ExperimentSpec& spec = need_spec(in);
  const dsl::RunDecl& run = find_run(spec, dsl::RunDecl::Kind::evolve, "evolve");
  Manifest manifest("evolve");
  manifest.add_input(in);

  const walk::CoupledWalk w = coupled_walk(spec, std::max(run.steps, 1));
  const LatticeWindow& space = w.space();
  Site x0(space.dims());
  for (int a = 0; a < space.dims(); ++a) x0[a] = -space.origin()[a];
  if (!space.contains(x0)) raise(ErrorCode::InvalidArgument, "window does not contain position 0");
  walk::Vector internal = walk::Vector::Zero(w.d());
  internal(0) = 1.0;
  const walk::WalkState init = walk::WalkState::localized(space, w.d(), x0, internal);
  const walk::Trajectory tr = walk::evolve(w, init, run.steps);

  const std::string dir = output_dir(opt, &in);
  const std::string csv = manifest.write(dir, "trajectory.csv", trajectory_csv(space, tr));
  const std::string sum = manifest.write(dir, "summary.json", summary_json(tr));
  emit(opt, ordered_json{{"trajectory", csv}, {"summary", sum}, {"steps", run.steps}, {"norm_drift", tr.norm_drift}},
       "trajectory: " + csv + "\nsummary: " + sum + "\nnorm drift: " + format_double(tr.norm_drift) + "\n");
  manifest.finish(dir, opt);
  return 0;
}

int spectrum(const Options& opt) {
  std::vector<Input> store;
  const Input& in = single_input(opt, store);
  const dsl::ExperimentSpec& spec = need_spec(in);
  const dsl::RunDecl& run = find_run(spec, dsl::RunDecl::Kind::spectrum, "spectrum");
  Manifest manifest("spectrum");
  manifest.add_input(in);

  const auto [p, q] = dsl::spectrum_flux(spec, run);
  const spectral::Spectrum s =
      spectral::spectrum_sweep(dsl::build_decomposition(spec), p, q, run.kgrid, opt.threads);

  const std::string dir = output_dir(opt, &in);
  const std::string path = manifest.write(dir, "spectrum.csv", spectral::spectrum_csv(s.samples));
  ordered_json bands = ordered_json::array();
  std::string text = "flux: 2pi*" + std::to_string(p) + "/" + std::to_string(q) + "\nbands: " +
                     std::to_string(s.band_count) + "\n";
  for (const auto& b : s.bands) {
    bands.push_back({b.lo, b.hi});
    text += "  [" + format_double(b.lo) + ", " + format_double(b.hi) + "]\n";
  }
  text += "spectrum: " + path + "\n";
  emit(opt, ordered_json{{"p", p}, {"q", q}, {"bands", s.band_count}, {"intervals", bands}, {"spectrum", path}}, text);
  manifest.finish(dir, opt);
  return 0;
}

int butterfly(const Options& opt) {
  std::vector<Input> store;
  const Input& in = single_input(opt, store);
  const dsl::ExperimentSpec& spec = need_spec(in);
  const dsl::RunDecl& run = find_run(spec, dsl::RunDecl::Kind::butterfly, "butterfly");
  Manifest manifest("butterfly");
  manifest.add_input(in);

  const spectral::ButterflyGrid g = spectral::butterfly(dsl::build_decomposition(spec), run.qmax, run.kgrid,
                                                        run.bins, run.periods, opt.threads);

  const std::string dir = output_dir(opt, &in);
  const std::string csv = manifest.write(dir, "butterfly.csv", spectral::butterfly_csv(g));
  const std::string pgm = manifest.write(dir, "butterfly.pgm", spectral::butterfly_pgm(g));
  emit(opt, ordered_json{{"rows", g.rows.size()}, {"bins", g.bins}, {"csv", csv}, {"pgm", pgm}},
       "rows: " + std::to_string(g.rows.size()) + "\nbins: " + std::to_string(g.bins) + "\ncsv: " + csv +
           "\npgm: " + pgm + "\n");
  manifest.finish(dir, opt);
  return 0;
}

int delta_gamma_demo(const Options& opt) {
  if (opt.inputs.size() > 1) throw UsageError("delta-gamma-demo takes at most one --input");
  std::vector<Input> store;
  Manifest manifest("delta-gamma-demo");
  LatticeWindow w({6, 5, 4}, Boundary::open);
  if (!opt.inputs.empty()) {
    store.push_back(load_input(opt.inputs[0], opt));
    manifest.add_input(store.back());
    w = dsl::space_window(need_spec(store.back()));
  }

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  std::uniform_int_distribution<int> den(1, 12);
  auto random_angle = [&](bool exact) {
    if (!exact) return Angle::radians(phase(rng));
    const int q = den(rng);
    return Angle::turns(std::uniform_int_distribution<int>(0, q - 1)(rng), q);
  };

  double dg = 0.0;
  for (int trial = 0; trial < 20; ++trial)
    for (int degree = 0; degree <= 1; ++degree) {
      forms::DiscreteForm f(w, degree);
      const bool exact = trial % 2 == 0;
      for (forms::Mask m : f.masks())
        for (std::size_t x = 0; x < w.size(); ++x)
          if (f.has_cell(x, m)) f.set(x, m, random_angle(exact));
      const forms::DiscreteForm back = forms::discretize(forms::continuize(f, degree), degree);
      dg = std::max(dg, forms::max_distance(back, f));
    }

  // Delta d = d Delta on the piecewise-linear interpolant of random lattice data.
  double inter = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    forms::DiscreteForm h(w, 0);
    for (std::size_t x = 0; x < w.size(); ++x) h.set(x, 0, Angle::radians(phase(rng)));
    const forms::SampledContinuumForm f = forms::continuize(h, 0, 8);
    forms::SampledContinuumForm df{w, 1, 8, {}};
    df.samples.assign(w.dims(), std::vector<std::vector<double>>(w.size()));
    for (int a = 0; a < w.dims(); ++a)
      for (std::size_t x = 0; x < w.size(); ++x) {
        const auto& s = f.samples[a][x];
        if (s.size() == 1) {
          df.samples[a][x] = {0.0};
          continue;
        }
        df.samples[a][x].assign(s.size(), s.back() - s.front());
      }
    const forms::DiscreteForm lhs = forms::exterior_derivative(forms::discretize(f, 0));
    const forms::DiscreteForm rhs = forms::discretize(df, 1);
    inter = std::max(inter, forms::max_distance(lhs, rhs));
  }

  const std::string dir = output_dir(opt, store.empty() ? nullptr : &store.front());
  emit(opt, ordered_json{{"window", w.describe()}, {"delta_gamma_max_deviation", dg}, {"intertwining_max_deviation", inter}},
       "window: " + w.describe() + "\ndelta-gamma max deviation: " + format_double(dg) +
           "\nintertwining max deviation: " + format_double(inter) + "\n");
  manifest.finish(dir, opt);
  return 0;
}

}  // namespace gaugewalk::cli
