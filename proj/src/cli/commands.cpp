#include "benflow/cli/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "benflow/cli/config.hpp"
#include "benflow/cli/examples.hpp"
#include "benflow/cli/matrix_io.hpp"
#include "benflow/cli/reports.hpp"
#include "benflow/errors.hpp"
#include "benflow/flow_signal.hpp"
#include "benflow/genericity.hpp"
#include "benflow/resonance.hpp"

namespace benflow::cli {

namespace {

using nlohmann::json;

struct GlobalFlags {
  std::string config_path;
  std::optional<int> base;
  std::optional<double> horizon;
  std::optional<double> step;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;
  std::string out_path;
};

RunConfig resolve_config(const GlobalFlags& g) {
  RunConfig c = g.config_path.empty() ? RunConfig{} : load_config(g.config_path);
  if (g.base) c.base = *g.base;
  if (g.horizon) c.horizon = *g.horizon;
  if (g.step) c.step = *g.step;
  if (g.seed) c.seed = *g.seed;
  if (g.format) c.format = *g.format;
  c.validate();
  return c;
}

void emit(const std::string& payload, const GlobalFlags& g, std::ostream& out) {
  if (g.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + g.out_path + "'");
  f << payload;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ExactComplex parse_annotation(const EigenvalueAnnotation& a, const BasisPtr& basis, Base b) {
  return {parse_exact(a.re, basis, b), parse_exact(a.im, basis, b)};
}

std::complex<double> numeric(const ExactComplex& z) {
  return {static_cast<double>(z.re.value()), static_cast<double>(z.im.value())};
}

int cmd_analyze(const std::string& path, const RunConfig& cfg, const GlobalFlags& g, std::ostream& out) {
  const MatrixInput in = read_matrix_file(path);
  const SquareMatrix& a = in.matrix;
  const SpectrumInfo sp = spectrum(a, cfg.spectrum_options());
  const auto values = sp.values();
  const auto dom = sp.dominant_values();
  const bool hyperbolic = is_hyperbolic(a, cfg.hyperbolicity_tol);

  json rep;
  rep["dimension"] = a.dim();
  rep["spectrum"] = to_json(sp);
  rep["hyperbolic"] = hyperbolic;
  rep["imaginary_axis_eigenvalue"] = !hyperbolic;
  rep["algebraic_shortcut"] = {
      {"assumes_algebraic_spectrum", true},
      {"exp_nonresonant", is_exp_nonresonant_algebraic(values, cfg.hyperbolicity_tol)},
      {"dominant_exp_nonresonant", is_exp_nonresonant_algebraic(dom, cfg.hyperbolicity_tol)}};
  if (a.dim() == 2) rep["planar_criterion"] = planar_criterion(a);

  if (in.annotated()) {
    const double anorm = std::max(1.0, a.matrix().cwiseAbs().colwise().sum().maxCoeff());
    {
      const BasisPtr basis = in.basis(Base(cfg.base));
      for (std::size_t i = 0; i < in.eigenvalues.size(); ++i) {
        const auto z = numeric(parse_annotation(in.eigenvalues[i], basis, Base(cfg.base)));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& w : values) best = std::min(best, std::abs(w - z));
        if (best > 1e-6 * anorm)
          throw UsageError("annotated eigenvalue " + std::to_string(i + 1) + " does not match the computed spectrum");
      }
    }
    auto verdicts = [&](int b) {
      const Base base(b);
      const BasisPtr basis = in.basis(base);
      std::vector<ExactComplex> all, dominant;
      for (const auto& e : in.eigenvalues) {
        ExactComplex z = parse_annotation(e, basis, base);
        if (std::fabs(static_cast<double>(z.re.value()) - sp.r) <= cfg.eigen_cluster_tol * anorm) dominant.push_back(z);
        all.push_back(std::move(z));
      }
      return std::make_pair(is_exp_b_nonresonant(all, base), is_exp_b_nonresonant(dominant, base));
    };
    auto [v, vd] = verdicts(cfg.base);
    json by_base = json::object();
    bool all_nonres = true;
    for (int b = 2; b <= 16; ++b) {
      try {
        const bool r = verdicts(b).first.resonant;
        by_base[std::to_string(b)] = r ? "resonant" : "nonresonant";
        all_nonres = all_nonres && !r;
      } catch (const UsageError&) {
        by_base[std::to_string(b)] = "unsupported";
      } catch (const RepresentationError&) {
        by_base[std::to_string(b)] = "unsupported";
      }
    }
    rep["exact"] = {{"base", cfg.base},
                    {"spectrum", to_json(v)},
                    {"dominant", to_json(vd)},
                    {"exp_nonresonant_by_base", by_base},
                    {"exp_nonresonant_all_tested_bases", all_nonres}};
  } else {
    rep["exact"] = nullptr;
  }
  rep["config"] = to_json(cfg);

  if (cfg.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "re,im,multiplicity,jordan_index,dominant\n";
    for (std::size_t i = 0; i < sp.points.size(); ++i) {
      const bool is_dom = std::find(sp.dominant.begin(), sp.dominant.end(), i) != sp.dominant.end();
      os << sp.points[i].z.real() << "," << sp.points[i].z.imag() << "," << sp.points[i].multiplicity << ","
         << sp.points[i].jordan_index << "," << (is_dom ? 1 : 0) << "\n";
    }
    emit(os.str(), g, out);
  } else {
    emit(dump(rep), g, out);
  }
  return kExitOk;
}

struct BenfordFlags {
  std::string matrix_path;
  std::string entry;
  std::string observable_path;
  std::string norm;
  std::optional<double> rate;
  int power = 0;
  std::vector<std::string> modes;
  std::string csv_path;
  std::string digits_csv_path;
};

NormKind parse_norm(const std::string& s) {
  if (s == "spectral") return NormKind::Spectral;
  if (s == "frobenius") return NormKind::Frobenius;
  if (s == "max") return NormKind::Max;
  throw UsageError("unknown norm '" + s + "' (spectral, frobenius, max)");
}

int cmd_benford(const BenfordFlags& f, const RunConfig& cfg, const GlobalFlags& g, std::ostream& out) {
  const int sources = (!f.matrix_path.empty()) + (f.rate.has_value() || !f.modes.empty()) + (!f.csv_path.empty());
  if (sources != 1) throw UsageError("give exactly one signal source: --matrix, --rate/--mode, or --csv");
  const Base b(cfg.base);
  BenfordReport rep;
  if (!f.csv_path.empty()) {
    const SignalData data = read_signal_csv(f.csv_path);
    rep = benford_verdict_data(data.t, data.value, b, cfg.thresholds());
  } else {
    const SamplingGrid grid(cfg.horizon, cfg.step);
    if (!f.matrix_path.empty()) {
      const SquareMatrix a = read_matrix_file(f.matrix_path).matrix;
      const int chosen = (!f.entry.empty()) + (!f.observable_path.empty()) + (!f.norm.empty());
      if (chosen > 1) throw UsageError("give at most one of --entry, --observable, --norm");
      if (!f.entry.empty()) {
        int i = 0, j = 0;
        char comma = 0;
        std::istringstream is(f.entry);
        if (!(is >> i >> comma >> j) || comma != ',' || !is.eof())
          throw UsageError("--entry expects i,j (1-based)");
        rep = benford_verdict(SignalSpec{ObservableOnFlow{a, Observable::entry(a.dim(), i - 1, j - 1)}}, b, grid,
                              cfg.thresholds());
      } else if (!f.observable_path.empty()) {
        const Observable h(read_matrix_file(f.observable_path).matrix.matrix());
        rep = benford_verdict(SignalSpec{ObservableOnFlow{a, h}}, b, grid, cfg.thresholds());
      } else {
        rep = benford_verdict(SignalSpec{NormOnFlow{a, f.norm.empty() ? NormKind::Spectral : parse_norm(f.norm)}}, b,
                              grid, cfg.thresholds());
      }
    } else {
      Synthetic s;
      s.r = f.rate.value_or(0.0);
      s.k = f.power;
      for (const auto& m : f.modes) {
        const auto colon = m.find(':');
        Mode mode;
        try {
          std::size_t used = 0;
          mode.omega = std::stod(m.substr(0, colon), &used);
          if (used != (colon == std::string::npos ? m.size() : colon)) throw std::invalid_argument(m);
          if (colon != std::string::npos) {
            const std::string w = m.substr(colon + 1);
            mode.weight = std::stod(w, &used);
            if (used != w.size()) throw std::invalid_argument(m);
          }
        } catch (const std::logic_error&) {
          throw UsageError("--mode expects omega[:weight], got '" + m + "'");
        }
        s.modes.push_back(mode);
      }
      if (s.modes.empty()) s.modes.push_back({0.0, 1.0});
      rep = benford_verdict(SignalSpec{s}, b, grid, cfg.thresholds());
    }
  }
  if (!f.digits_csv_path.empty()) {
    std::ofstream d(f.digits_csv_path, std::ios::binary);
    if (!d) throw UsageError("cannot write '" + f.digits_csv_path + "'");
    d << digits_csv(rep);
  }
  emit(cfg.format == "csv" ? digits_csv(rep) : dump(to_json(rep)), g, out);
  return rep.truncated ? kExitNumeric : kExitOk;
}

struct CensusFlags {
  int dim = 4;
  std::uint64_t n = 1000;
  std::string dist = "gaussian";
  double tol = 1e-8;
  int height = 8;
};

int cmd_census(const CensusFlags& f, const RunConfig& cfg, const GlobalFlags& g, std::ostream& out) {
  EnsembleSpec spec;
  spec.d = f.dim;
  spec.n = f.n;
  spec.seed = cfg.seed;
  if (f.dist == "gaussian") {
    spec.distribution = Distribution::Gaussian;
  } else if (f.dist == "uniform") {
    spec.distribution = Distribution::Uniform;
  } else if (f.dist.rfind("int", 0) == 0) {
    spec.distribution = Distribution::Integer;
    const std::string m = f.dist.substr(3);
    if (m.empty() || m.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("--dist int<m> expects a positive integer bound, e.g. int1");
    spec.integer_bound = std::stoi(m);
  } else {
    throw UsageError("unknown distribution '" + f.dist + "' (gaussian, uniform, int<m>)");
  }
  const CensusReport rep = resonance_census(spec, Base(cfg.base), f.tol, f.height);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "n,imaginary_axis_hits,multiple_eigenvalue_hits,relation_hits,tol,height,seed,ensemble\n"
       << rep.n << "," << rep.imaginary_axis_hits << "," << rep.multiple_eigenvalue_hits << "," << rep.relation_hits
       << "," << rep.tol << "," << rep.height << "," << rep.seed << "," << rep.ensemble << "\n";
    emit(os.str(), g, out);
  } else {
    emit(dump(to_json(rep)), g, out);
  }
  return kExitOk;
}

int cmd_example(const std::string& id, const RunConfig& cfg, const GlobalFlags& g, std::ostream& out,
                std::ostream& err) {
  ExampleResult res = run_example(id, cfg);
  res.report["config"] = to_json(cfg);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "check,passed\n";
    for (const auto& c : res.report["checks"]) os << c["name"].get<std::string>() << "," << c["passed"].get<bool>() << "\n";
    emit(os.str(), g, out);
  } else {
    emit(dump(res.report), g, out);
  }
  for (const auto& f : res.failures) err << "expectation failed: " << f << "\n";
  return res.expectation_met() ? kExitOk : kExitExpectation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Benford analysis of linear flows"};
  app.name("benflow");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config_path, "JSON run configuration");
  app.add_option("--base", g.base, "digit base b >= 2");
  app.add_option("--horizon", g.horizon, "sampling horizon T");
  app.add_option("--step", g.step, "sampling step");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--format", g.format, "output format: json or csv");
  app.add_option("--out", g.out_path, "write output to this path");

  std::string matrix_path;
  auto* analyze = app.add_subcommand("analyze-matrix", "spectrum, dominant spectrum and resonance of a generator");
  analyze->add_option("matrix", matrix_path, "CSV or JSON matrix file")->required();

  BenfordFlags bf;
  auto* benford = app.add_subcommand("benford", "Benford verdict for a flow signal, synthetic signal or CSV data");
  benford->add_option("--matrix", bf.matrix_path, "generator matrix file");
  benford->add_option("--entry", bf.entry, "observe entry i,j (1-based)");
  benford->add_option("--observable", bf.observable_path, "observable coefficient matrix file");
  benford->add_option("--norm", bf.norm, "observe a norm: spectral, frobenius, max");
  benford->add_option("--rate", bf.rate, "synthetic growth rate r");
  benford->add_option("--power", bf.power, "synthetic polynomial power k");
  benford->add_option("--mode", bf.modes, "synthetic mode omega[:weight], repeatable");
  benford->add_option("--csv", bf.csv_path, "two-column (t, value) CSV");
  benford->add_option("--digits-csv", bf.digits_csv_path, "also write digit frequencies as CSV");

  std::string example_id;
  auto* example = app.add_subcommand("example", "reproduce a worked example and check its expectation");
  example->add_option("id", example_id, "example id")->required();

  CensusFlags cf;
  auto* census = app.add_subcommand("census", "Monte Carlo census over a random-matrix ensemble");
  census->add_option("--dim", cf.dim, "matrix dimension");
  census->add_option("--n", cf.n, "number of samples");
  census->add_option("--dist", cf.dist, "gaussian, uniform or int<m>");
  census->add_option("--tol", cf.tol, "proximity tolerance");
  census->add_option("--height", cf.height, "integer relation height");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const RunConfig cfg = resolve_config(g);
    if (*analyze) return cmd_analyze(matrix_path, cfg, g, out);
    if (*benford) return cmd_benford(bf, cfg, g, out);
    if (*census) return cmd_census(cf, cfg, g, out);
    if (*example) return cmd_example(example_id, cfg, g, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RepresentationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace benflow::cli
