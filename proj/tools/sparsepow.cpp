// sparsepow: certified matrix elements of real powers of infinite sparse
// Hermitian matrices.
//
//   sparsepow approx  model.json --alpha A --m M --n N --tol T [--max-dim D]
//   sparsepow table   model.json --alpha A --m M --n N --windows 4,8,16:20
//   sparsepow solve   model.json --rhs f.txt --out 0,1,2 --tol T
//   sparsepow example --a A --b B --alpha A --sizes 33,65,129
//
// Exit codes: 0 converged, 2 not converged (best certificate printed),
// 3 invalid input or violated premises.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "sparsepow/certificate.hpp"
#include "sparsepow/config.hpp"
#include "sparsepow/driver.hpp"
#include "sparsepow/lattice.hpp"
#include "sparsepow/series.hpp"

namespace {

using namespace sparsepow;

constexpr int kExitConverged = 0;
constexpr int kExitNotConverged = 2;
constexpr int kExitInvalid = 3;

struct ElementOptions {
  std::string config;
  double alpha = 1.0;
  Index m = 0;
  Index n = 0;
  double tol = 1e-8;
  Index max_dim = DriverLimits{}.max_dimension;
};

DriverLimits limits_for(Index max_dim) {
  DriverLimits limits;
  limits.max_dimension = max_dim;
  return limits;
}

std::string format_depth(const TruncationDepth& depth) {
  return depth.unbounded() ? "inf" : std::to_string(depth.j_pq);
}

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const Index p = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Window(p, p);
    }
    const std::string lhs = text.substr(0, colon);
    const std::string rhs = text.substr(colon + 1);
    const Index p = std::stoll(lhs, &used);
    if (used != lhs.size()) throw std::invalid_argument(text);
    const Index q = std::stoll(rhs, &used);
    if (used != rhs.size()) throw std::invalid_argument(text);
    return Window(p, q);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Parse, "--windows: cannot parse '" + text + "' as P or P:Q");
  }
}

int run_approx(const ElementOptions& opt) {
  const ModelConfig model = load_model_config(opt.config);
  try {
    const Certificate cert = approximate_element(model.spec, model.boundary, opt.alpha, opt.m, opt.n,
                                                 opt.tol, limits_for(opt.max_dim));
    std::cout << format_certificate(cert) << "\n";
    return kExitConverged;
  } catch (const NotConvergedError& e) {
    if (e.best()) std::cout << format_certificate(*e.best()) << "\n";
    std::cerr << "sparsepow: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitNotConverged;
  }
}

int run_table(const ElementOptions& opt, const std::vector<std::string>& window_specs) {
  const ModelConfig model = load_model_config(opt.config);
  std::vector<Window> windows;
  for (const auto& text : window_specs) windows.push_back(parse_window(text));

  const auto rows = convergence_table(model.spec, model.boundary, opt.alpha, opt.m, opt.n, windows,
                                      limits_for(opt.max_dim));
  std::cout << "P,Q,value_re,value_im,j_pq,bound\n";
  for (const auto& row : rows) {
    std::cout << row.window.P() << "," << row.window.Q() << ",";
    if (row.ok()) {
      const Certificate& c = *row.certificate;
      std::cout << format_number(c.value.real()) << "," << format_number(c.value.imag()) << ","
                << format_depth(c.depth) << "," << format_number(c.bound) << "\n";
    } else {
      std::cout << "nan,nan,nan,nan\n";
      std::cerr << "sparsepow: P=" << row.window.P() << " Q=" << row.window.Q() << ": " << row.error << "\n";
    }
  }
  return kExitConverged;
}

int run_solve(const std::string& config, const std::string& rhs_path, const std::vector<Index>& out,
              double tol, Index max_dim) {
  const ModelConfig model = load_model_config(config);
  const auto rhs = load_rhs(rhs_path);
  const auto solution = local_solve(model.spec, model.boundary, rhs, out, tol, limits_for(max_dim));
  std::cout << "index,value_re,value_im,bound\n";
  for (Index m : out) {
    const SolveEntry& e = solution.at(m);
    std::cout << m << "," << format_number(e.value.real()) << "," << format_number(e.value.imag()) << ","
              << format_number(e.bound) << "\n";
  }
  return kExitConverged;
}

int run_example(double a, double b, double alpha, const std::vector<Index>& sizes, Index m, Index n) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorKind::Domain, "--a and --b must both be positive");
  }
  const LatticeModelParams params{a, b};
  const InfiniteMatrixSpec spec = lattice_spec(params);
  const double reference = dispersion_integral_element(params, alpha, m, n);

  std::cout << "N,value,reference,abs_error,bound\n";
  for (Index size : sizes) {
    if (size < 2) throw Error(ErrorKind::Domain, "--sizes entries must be at least 2");
    const Index P = (size - 1) / 2;
    const Window window(P, size - 1 - P);
    if (!window.contains(m) || !window.contains(n)) {
      throw Error(ErrorKind::Range, "element lies outside the window of size " + std::to_string(size));
    }
    const double value = circulant_power_element(window, params, alpha, m, n);
    const Certificate cert = certify(Complex{value, 0.0}, alpha, spec.envelope(),
                                     truncation_depth(spec, window, m, n));
    std::cout << size << "," << format_number(value) << "," << format_number(reference) << ","
              << format_number(std::abs(value - reference)) << "," << format_number(cert.bound) << "\n";
  }
  return kExitConverged;
}

void add_element_options(CLI::App* cmd, ElementOptions& opt) {
  cmd->add_option("config", opt.config, "Model configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--alpha", opt.alpha, "Real power alpha")->required();
  cmd->add_option("--m", opt.m, "Row index")->required();
  cmd->add_option("--n", opt.n, "Column index")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified matrix elements of real powers of infinite sparse Hermitian matrices"};
  app.require_subcommand(1);

  ElementOptions approx_opt;
  auto* approx = app.add_subcommand("approx", "Grow the window until the certified bound meets --tol");
  add_element_options(approx, approx_opt);
  approx->add_option("--tol", approx_opt.tol, "Target error bound")->required();
  approx->add_option("--max-dim", approx_opt.max_dim, "Largest truncation dimension");

  ElementOptions table_opt;
  std::vector<std::string> windows;
  auto* table = app.add_subcommand("table", "Evaluate the pipeline on a list of windows (CSV)");
  add_element_options(table, table_opt);
  table->add_option("--windows", windows, "Windows as P (symmetric) or P:Q, comma separated")
      ->required()
      ->delimiter(',');
  table->add_option("--max-dim", table_opt.max_dim, "Largest truncation dimension");

  std::string solve_config;
  std::string rhs_path;
  std::vector<Index> out_indices;
  double solve_tol = 1e-8;
  Index solve_max_dim = DriverLimits{}.max_dimension;
  auto* solve = app.add_subcommand("solve", "Local solution of W x = f (CSV)");
  solve->add_option("config", solve_config, "Model configuration (JSON)")->required()->check(CLI::ExistingFile);
  solve->add_option("--rhs", rhs_path, "Right-hand side: lines of 'index re im'")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", out_indices, "Output indices, comma separated")->required()->delimiter(',');
  solve->add_option("--tol", solve_tol, "Target error bound per output")->required();
  solve->add_option("--max-dim", solve_max_dim, "Largest truncation dimension");

  double ex_a = 1.0;
  double ex_b = 1.0;
  double ex_alpha = -0.5;
  Index ex_m = 0;
  Index ex_n = 0;
  std::vector<Index> sizes{33, 65, 129, 257};
  auto* example = app.add_subcommand("example", "Periodic lattice convergence study (CSV)");
  example->add_option("--a", ex_a, "Mass coefficient a > 0");
  example->add_option("--b", ex_b, "Coupling b > 0");
  example->add_option("--alpha", ex_alpha, "Real power alpha");
  example->add_option("--sizes", sizes, "Window sizes N = P + Q + 1, comma separated")->delimiter(',');
  example->add_option("--m", ex_m, "Row index");
  example->add_option("--n", ex_n, "Column index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*approx) return run_approx(approx_opt);
    if (*table) return run_table(table_opt, windows);
    if (*solve) return run_solve(solve_config, rhs_path, out_indices, solve_tol, solve_max_dim);
    if (*example) return run_example(ex_a, ex_b, ex_alpha, sizes, ex_m, ex_n);
  } catch (const NotConvergedError& e) {
    std::cerr << "sparsepow: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitNotConverged;
  } catch (const Error& e) {
    std::cerr << "sparsepow: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
