// reflectionless: evaluate, verify and extract for the sech^2 well.
//
//   reflectionless eval potential --x-min -4 --x-max 4 --x-step 0.01
//   reflectionless verify all --format json --out report.json
//   reflectionless extract --kappa 3
//
// Every global flag also reads REFLECTIONLESS_<FLAG> (e.g. REFLECTIONLESS_KAPPA);
// the command line wins.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "reflectionless/reflectionless.hpp"
#include "reflectionless/verify.hpp"

namespace rl = reflectionless;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class EvalWhat { potential, psi0, psik, parity_even, parity_odd };

struct EvalArgs {
  EvalWhat what = EvalWhat::potential;
  double x_min = -10.0, x_max = 10.0, x_step = 0.01, k = 1.0;
};

rl::DataTable run_eval(const rl::RunConfig& cfg, const EvalArgs& a) {
  if (!(a.x_step > 0.0)) throw std::invalid_argument("x-step must be positive");
  if (!(a.x_max >= a.x_min)) throw std::invalid_argument("x-max must not be below x-min");
  const auto p = cfg.params();
  const bool real = a.what == EvalWhat::potential || a.what == EvalWhat::psi0;
  // touch k once so an excluded wavenumber fails before any output
  if (!real) {
    if (a.what == EvalWhat::psik) rl::psi_k(a.k, 0.0, p);
    else rl::parity_even(a.k, 0.0, p);
  }
  rl::DataTable t;
  t.columns = real ? std::vector<std::string>{"x", "value"} : std::vector<std::string>{"x", "re", "im"};
  const long n = std::lround(std::floor((a.x_max - a.x_min) / a.x_step + 1e-9)) + 1;
  for (long i = 0; i < n; ++i) {
    const double x = a.x_min + static_cast<double>(i) * a.x_step;
    switch (a.what) {
      case EvalWhat::potential: t.add({x, rl::potential_v(x, p)}); break;
      case EvalWhat::psi0: t.add({x, rl::psi0(x, p)}); break;
      default: {
        const rl::cplx v = a.what == EvalWhat::psik          ? rl::psi_k(a.k, x, p)
                           : a.what == EvalWhat::parity_even ? rl::parity_even(a.k, x, p)
                                                             : rl::parity_odd(a.k, x, p);
        t.add({x, v.real(), v.imag()});
      }
    }
  }
  return t;
}

rl::DataTable run_extract(const rl::RunConfig& cfg) {
  const auto p = cfg.params();
  std::vector<double> xs(401);
  for (int i = 0; i < 401; ++i) xs[i] = (-10.0 + 0.05 * i) / p.kappa;
  const auto ex = rl::extract_bound_state(xs, p);
  rl::DataTable t;
  t.columns = {"x", "extracted", "analytic", "abs_error"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double a = rl::psi0(xs[i], p);
    t.add({xs[i], ex[i], a, std::abs(ex[i] - a)});
  }
  rl::QuadratureSpec spec;
  spec.abs_tol = spec.rel_tol = 1e-11;
  spec.decay_cutoff = 40.0 / p.kappa;
  const double n_bound = rl::count_bound_states(p, spec);
  t.rows.push_back({"trace", rl::format_number(n_bound), rl::format_number(1.0), rl::format_number(std::abs(n_bound - 1.0))});
  return t;
}

template <class Writer>
void emit(const rl::RunConfig& cfg, Writer&& write) {
  if (cfg.out_path.empty()) {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw IoError("cannot open " + cfg.out_path + " for writing");
  write(f);
  f.close();
  if (!f) throw IoError("failed writing " + cfg.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral checks for the reflectionless sech^2 well"};
  app.require_subcommand(1);
  rl::RunConfig cfg;
  const std::map<std::string, rl::OutputFormat> formats{{"csv", rl::OutputFormat::csv},
                                                         {"json", rl::OutputFormat::json}};
  app.add_option("--kappa", cfg.kappa, "well parameter kappa")->envname("REFLECTIONLESS_KAPPA");
  app.add_option("--tol", cfg.tolerance, "check tolerance")->envname("REFLECTIONLESS_TOL");
  app.add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->envname("REFLECTIONLESS_FORMAT");
  app.add_option("--out", cfg.out_path, "output file (default stdout)")->envname("REFLECTIONLESS_OUT");
  app.add_option("--seed", cfg.seed, "seed for randomized probe points")->envname("REFLECTIONLESS_SEED");
  app.add_option("--k-max", cfg.k_max, "wavenumber cutoff of the expansion grid")->envname("REFLECTIONLESS_K_MAX");
  app.add_option("--k-points", cfg.k_points, "nodes in the expansion grid")->envname("REFLECTIONLESS_K_POINTS");
  app.add_option("--grid-n", cfg.grid_n, "interior points of the box grid")->envname("REFLECTIONLESS_GRID_N");
  app.add_option("--grid-l", cfg.grid_l, "box half-width")->envname("REFLECTIONLESS_GRID_L");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "tabulate a closed-form function");
  const std::map<std::string, EvalWhat> whats{{"potential", EvalWhat::potential},
                                              {"psi0", EvalWhat::psi0},
                                              {"psik", EvalWhat::psik},
                                              {"parity_even", EvalWhat::parity_even},
                                              {"parity_odd", EvalWhat::parity_odd}};
  eval->add_option("what", eval_args.what, "potential|psi0|psik|parity_even|parity_odd")
      ->required()
      ->transform(CLI::CheckedTransformer(whats));
  eval->add_option("--x-min", eval_args.x_min, "first x")->envname("REFLECTIONLESS_X_MIN");
  eval->add_option("--x-max", eval_args.x_max, "last x")->envname("REFLECTIONLESS_X_MAX");
  eval->add_option("--x-step", eval_args.x_step, "x spacing")->envname("REFLECTIONLESS_X_STEP");
  eval->add_option("--k", eval_args.k, "wavenumber for continuum states")->envname("REFLECTIONLESS_K");

  rl::Suite suite = rl::Suite::all;
  auto* verify = app.add_subcommand("verify", "run verification checks");
  const std::map<std::string, rl::Suite> suites{{"orthonormality", rl::Suite::orthonormality},
                                                {"completeness", rl::Suite::completeness},
                                                {"parity", rl::Suite::parity},
                                                {"momentum", rl::Suite::momentum},
                                                {"transforms", rl::Suite::transforms},
                                                {"oracle", rl::Suite::oracle},
                                                {"all", rl::Suite::all}};
  verify->add_option("suite", suite, "orthonormality|completeness|parity|momentum|transforms|oracle|all")
      ->transform(CLI::CheckedTransformer(suites));

  auto* extract = app.add_subcommand("extract", "recover the bound state from the completeness defect");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.validate();
    if (eval->parsed()) {
      const auto t = run_eval(cfg, eval_args);
      emit(cfg, [&](std::ostream& os) { rl::write_table(os, cfg, t); });
      return kExitOk;
    }
    if (extract->parsed()) {
      const auto t = run_extract(cfg);
      emit(cfg, [&](std::ostream& os) { rl::write_table(os, cfg, t); });
      return kExitOk;
    }
    if (verify->parsed()) {
      const auto records = rl::run_verify(cfg, suite);
      emit(cfg, [&](std::ostream& os) { rl::write_report(os, cfg, records); });
      for (const auto& r : records)
        if (!r.passed)
          std::cerr << "FAILED " << r.check_name << ": abs_error " << rl::format_number(r.abs_error) << " > "
                    << rl::format_number(r.tolerance) << '\n';
      return rl::all_passed(records) ? kExitOk : kExitVerifyFailed;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
