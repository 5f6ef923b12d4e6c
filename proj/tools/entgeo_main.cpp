// entgeo: two-qubit entanglement quantifiers along parameterized state
// families. Subcommands: scan, witness, evolve, fidelity.
//
// Exit codes: 0 success, 1 I/O failure, 2 validation or usage failure.
// Scan/evolve data goes to the output file (or stdout); kink summaries and
// diagnostics go to stderr so pipelines consume clean data.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entgeo/boundary.hpp"
#include "entgeo/entmeas.hpp"
#include "entgeo/io.hpp"
#include "entgeo/qdyn.hpp"
#include "entgeo/qstate.hpp"

namespace {

using namespace entgeo;

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty())
    std::cout << content;
  else
    io::write_file_atomic(output_path, content);
}

DensityMatrix load_state(const std::string& path) {
  const std::string text = io::read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("state file is not valid JSON: " + std::string(e.what()));
  }
  return io::state_from_json(j);
}

Bell parse_target(const std::string& name) {
  if (name == "phi+") return Bell::phi_plus;
  if (name == "phi-") return Bell::phi_minus;
  if (name == "psi+") return Bell::psi_plus;
  if (name == "psi-") return Bell::psi_minus;
  throw std::invalid_argument("unknown target '" + name + "' (expected phi+|phi-|psi+|psi-)");
}

struct ScanCli {
  ScanParams params;
  double threshold = 10.0;
  std::string output;
  std::string format = "csv";
  std::string source = "direct";
  bool t_max_set = false;
};

int run_scan(const ScanCli& cli) {
  ScanParams params = cli.params;
  if (cli.source == "direct")
    params.source = ScanSource::direct;
  else if (cli.source == "channel")
    params.source = ScanSource::channel;
  else if (cli.source == "dynamics")
    params.source = ScanSource::dynamics;
  else
    throw std::invalid_argument("unknown source '" + cli.source + "'");

  if (params.source == ScanSource::dynamics && !cli.t_max_set) {
    if (params.g == 0.0) throw std::invalid_argument("dynamics source requires g != 0");
    params.t_max = 3.141592653589793 / std::abs(params.g);  // one full swap: q from 1 to 0
  }

  const std::vector<ScanRecord> records = scan_family(params);
  if (records.empty()) throw std::invalid_argument("scan produced no records in [q_min, q_max]");

  if (cli.format == "csv")
    emit(cli.output, io::scan_to_csv(records));
  else if (cli.format == "json")
    emit(cli.output, io::scan_to_json(records).dump(2) + "\n");
  else
    throw std::invalid_argument("unknown format '" + cli.format + "' (expected csv|json)");

  if (params.source == ScanSource::dynamics) {
    std::fprintf(stderr, "kink detection skipped (dynamics grid is not uniform in q)\n");
    return 0;
  }
  const std::vector<KinkReport> kinks = detect_kinks(records, cli.threshold);
  if (kinks.empty()) {
    std::fprintf(stderr, "no kink detected\n");
  } else {
    for (const KinkReport& k : kinks)
      std::fprintf(stderr, "kink: q_star=%.3f±%g jump=%g\n", k.q_star, k.grid_spacing,
                   k.jump);
  }
  return 0;
}

int run_witness(const std::string& state_path) {
  const DensityMatrix rho = load_state(state_path);
  const double lam_min = pt_min_eigenvalue(rho);
  nlohmann::json out;
  if (lam_min >= -1e-9) {
    out["verdict"] = "separable within tolerance";
    out["pt_min_eigenvalue"] = lam_min;
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  const WitnessOperator w = optimal_witness(rho);
  out["witness"] = io::matrix_to_json(w.matrix());
  out["trace"] = trace(w.matrix()).real();
  out["expectation"] = witness_value(w, rho);
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct EvolveCli {
  double omega = 0.0;
  double g = 1.0;
  double t_max = 3.141592653589793;
  int steps = 101;
  std::string output;
};

int run_evolve(const EvolveCli& cli) {
  if (cli.g == 0.0) throw std::invalid_argument("evolve requires g != 0");
  if (cli.steps < 2) throw std::invalid_argument("evolve requires steps >= 2");
  if (!(cli.t_max > 0.0)) throw std::invalid_argument("evolve requires t-max > 0");

  const PureState psi = bell(Bell::psi_plus);
  const PureState phi = bell(Bell::phi_plus);
  std::vector<io::EvolveRecord> rows;
  rows.reserve(static_cast<std::size_t>(cli.steps));
  for (int i = 0; i < cli.steps; ++i) {
    const double t = cli.t_max * static_cast<double>(i) / (cli.steps - 1);
    const DensityMatrix rho = evolve_swap({cli.omega, cli.g, t});
    rows.push_back({t, q_overlap(rho), negativity(rho), fidelity_pure(psi, rho),
                    fidelity_pure(phi, rho)});
  }
  emit(cli.output, io::evolve_to_csv(rows));
  return 0;
}

int run_fidelity(const std::string& state_path, const std::string& target) {
  const DensityMatrix rho = load_state(state_path);
  const double f = fidelity_pure(bell(parse_target(target)), rho);
  std::printf("%.6f\n", f);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qubit entanglement quantifiers along parameterized state families"};
  app.require_subcommand(1);

  ScanCli scan_cli;
  auto* scan = app.add_subcommand(
      "scan", "scan the psi/phi mixture family and report negativity, robustness and witnesses");
  scan->add_option("--q-min", scan_cli.params.q_min, "lower end of the q range")
      ->capture_default_str();
  scan->add_option("--q-max", scan_cli.params.q_max, "upper end of the q range")
      ->capture_default_str();
  scan->add_option("--steps", scan_cli.params.steps, "number of grid points (>= 3)")
      ->capture_default_str();
  scan->add_option("--source", scan_cli.source, "state source: direct|channel|dynamics")
      ->capture_default_str();
  scan->add_option("--omega", scan_cli.params.omega, "level splitting (dynamics source)")
      ->capture_default_str();
  scan->add_option("--g", scan_cli.params.g, "swap coupling (dynamics source)")
      ->capture_default_str();
  scan->add_option("--t-max", scan_cli.params.t_max, "sweep end time (dynamics source)")
      ->each([&scan_cli](const std::string&) { scan_cli.t_max_set = true; });
  scan->add_option("--threshold", scan_cli.threshold, "kink detector threshold")
      ->capture_default_str();
  scan->add_option("--output", scan_cli.output, "output path (default stdout)");
  scan->add_option("--format", scan_cli.format, "output format: csv|json")
      ->capture_default_str();

  std::string witness_state;
  auto* witness = app.add_subcommand("witness", "optimal entanglement witness for a state file");
  witness->add_option("--state", witness_state, "JSON state file")->required();

  EvolveCli evolve_cli;
  auto* evolve = app.add_subcommand("evolve", "sweep the double-swap dynamics over time");
  evolve->add_option("--omega", evolve_cli.omega, "level splitting")->capture_default_str();
  evolve->add_option("--g", evolve_cli.g, "swap coupling (!= 0)")->capture_default_str();
  evolve->add_option("--t-max", evolve_cli.t_max, "sweep end time")->capture_default_str();
  evolve->add_option("--steps", evolve_cli.steps, "number of time points (>= 2)")
      ->capture_default_str();
  evolve->add_option("--output", evolve_cli.output, "output path (default stdout)");

  std::string fidelity_state, fidelity_target;
  auto* fidelity = app.add_subcommand("fidelity", "fidelity of a state file to a Bell state");
  fidelity->add_option("--state", fidelity_state, "JSON state file")->required();
  fidelity->add_option("--target", fidelity_target, "phi+|phi-|psi+|psi-")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (scan->parsed()) return run_scan(scan_cli);
    if (witness->parsed()) return run_witness(witness_state);
    if (evolve->parsed()) return run_evolve(evolve_cli);
    if (fidelity->parsed()) return run_fidelity(fidelity_state, fidelity_target);
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const entgeo::io::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
