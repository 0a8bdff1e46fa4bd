// Command-line front end. Talks to the library only through homflow.h.
#include "homflow/homflow.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct Common {
  double dt = 0.0;
  double t_end = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::string method = "rk4";
  std::string output_dir = ".";
  std::string format = "text";
  std::vector<double> x0, p0;
  std::string example;
  std::string input;
  std::string target;
};

void add_common(CLI::App* sub, Common& c, bool integration) {
  sub->add_option("--seed", c.seed, "Seed for sampling and random start points (default 20240601)");
  sub->add_option("--alpha", c.alpha, "Irrational parameter of the wild algebra (default sqrt(2))");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "kv"}));
  sub->add_option("--output-dir", c.output_dir, "Directory for CSV artifacts")->capture_default_str();
  if (!integration) return;
  sub->add_option("--dt", c.dt, "Step size (default 1e-3)")->check(CLI::PositiveNumber);
  sub->add_option("--T", c.t_end, "Final time (default 10, 100 for figure1)")->check(CLI::PositiveNumber);
  sub->add_option("--method", c.method, "Integrator")->check(CLI::IsMember({"rk4", "midpoint"}));
  sub->add_option("--x0", c.x0, "Initial positions, comma separated")->delimiter(',');
  sub->add_option("--p0", c.p0, "Initial momenta or coalgebra point, comma separated")->delimiter(',');
}

homflow_options to_options(const Common& c) {
  homflow_options o;
  homflow_options_init(&o);
  o.dt = c.dt;
  o.t_end = c.t_end;
  if (c.seed) {
    o.has_seed = 1;
    o.seed = *c.seed;
  }
  if (c.alpha) {
    o.has_alpha = 1;
    o.alpha = *c.alpha;
  }
  o.method = c.method == "midpoint" ? HOMFLOW_MIDPOINT : HOMFLOW_RK4;
  if (!c.x0.empty()) {
    o.x0 = c.x0.data();
    o.x0_len = c.x0.size();
  }
  if (!c.p0.empty()) {
    o.p0 = c.p0.data();
    o.p0_len = c.p0.size();
  }
  return o;
}

int input_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

int exit_code(homflow_status s) {
  switch (s) {
    case HOMFLOW_OK:
      return 0;
    case HOMFLOW_CHECK_FAILED:
      return 1;
    case HOMFLOW_INPUT_ERROR:
      return input_error(homflow_last_error());
    default:
      std::cerr << "error: " << homflow_last_error() << "\n";
      return 1;
  }
}

int emit(homflow_status s, homflow_report* r, const Common& c) {
  if (!r) return exit_code(s);
  std::cout << (c.format == "kv" ? homflow_report_kv(r) : homflow_report_text(r));
  const size_t n = homflow_report_csv_count(r);
  if (n > 0) {
    std::error_code ec;
    std::filesystem::create_directories(c.output_dir, ec);
    for (size_t i = 0; i < n; ++i) {
      const auto path = std::filesystem::path(c.output_dir) / homflow_report_csv_name(r, i);
      std::ofstream out(path, std::ios::binary);
      out << homflow_report_csv_data(r, i);
      if (!out) {
        homflow_report_free(r);
        return input_error("cannot write " + path.string());
      }
      if (c.format == "text") std::cout << "wrote " << path.string() << "\n";
    }
  }
  if (s == HOMFLOW_CHECK_FAILED) std::cerr << "some checks FAILED\n";
  homflow_report_free(r);
  return exit_code(s);
}

// --example NAME or an algebra file
int load(const Common& c, const homflow_options& o, homflow_algebra** alg) {
  if (c.example.empty() == c.input.empty()) return input_error("give exactly one of --example NAME or an algebra FILE");
  const homflow_status s = c.example.empty() ? homflow_algebra_from_file(c.input.c_str(), &o, alg)
                                             : homflow_algebra_builtin(c.example.c_str(), &o, alg);
  return s == HOMFLOW_OK ? 0 : exit_code(s);
}

using AlgebraCommand = homflow_status (*)(const homflow_algebra*, const homflow_options*, homflow_report**);

int run_on_algebra(const Common& c, AlgebraCommand cmd) {
  const homflow_options o = to_options(c);
  homflow_algebra* alg = nullptr;
  if (int rc = load(c, o, &alg); rc != 0) return rc;
  homflow_report* r = nullptr;
  const homflow_status s = cmd(alg, &o, &r);
  homflow_algebra_free(alg);
  return emit(s, r, c);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants, geodesic flows and canonical charts on homogeneous spaces"};
  app.set_version_flag("--version", homflow_version());
  app.require_subcommand(1);
  const std::string names = homflow_builtin_names();
  Common c;

  auto* analyze = app.add_subcommand("analyze", "Index, space invariants, integrability verdicts and realization check");
  analyze->add_option("file", c.input, "Algebra file");
  analyze->add_option("--example", c.example, "Built-in example: " + names);
  add_common(analyze, c, false);

  auto* coalg = app.add_subcommand("integrate-coalgebra", "Lie-Poisson flow of H = P.G.P/2 on the coalgebra");
  coalg->add_option("file", c.input, "Algebra file");
  coalg->add_option("--example", c.example, "Built-in example: " + names);
  add_common(coalg, c, true);

  auto* geo = app.add_subcommand("integrate-geodesic", "Geodesic flow of the central metric on T*M");
  geo->add_option("file", c.input, "Algebra file with vector fields");
  geo->add_option("--example", c.example, "Built-in example: " + names);
  add_common(geo, c, true);

  auto* check = app.add_subcommand("check-transform", "Chart and transition-function verification battery");
  check->add_option("--example", c.example, "sec4 or sec5")->required()->check(CLI::IsMember({"sec4", "sec5"}));
  add_common(check, c, false);

  auto* repro = app.add_subcommand("reproduce", "End-to-end reproductions with CSV output");
  repro->add_option("--target", c.target, "sec4-flow, sec5-flow or figure1")
      ->required()
      ->check(CLI::IsMember({"sec4-flow", "sec5-flow", "figure1"}));
  add_common(repro, c, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*analyze) return run_on_algebra(c, homflow_analyze);
  if (*coalg) return run_on_algebra(c, homflow_integrate_coalgebra);
  if (*geo) return run_on_algebra(c, homflow_integrate_geodesic);

  const homflow_options o = to_options(c);
  homflow_report* r = nullptr;
  if (*check) {
    const homflow_status s = homflow_check_transform(c.example.c_str(), &o, &r);
    return emit(s, r, c);
  }
  const homflow_status s = homflow_reproduce(c.target.c_str(), &o, &r);
  return emit(s, r, c);
}
