// Writes a synthetic dataset whose production is the UC schedule of a known
// plant, so `plantfit fit` can be exercised end to end.

#include <CLI11.hpp>

#include <iostream>

#include "plantfit/ingest.hpp"
#include "plantfit/synthetic.hpp"
#include "plantfit/uc_solver.hpp"

int main(int argc, char** argv) {
  using namespace plantfit;
  CLI::App app{"plantfit_make_fixture: synthetic closed-loop dataset"};
  std::string out_dir;
  std::size_t days = 14;
  std::uint64_t seed = 7;
  double capacity = 400.0, noise = 0.0;
  PlantParameters truth{0.53, 40.0, 6.0, 2.0, 0.184};
  app.add_option("out_dir", out_dir, "directory to write")->required();
  app.add_option("--days", days, "number of days")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "market seed");
  app.add_option("--capacity", capacity, "plant capacity [MW]")->check(CLI::PositiveNumber);
  app.add_option("--noise", noise, "observation noise sd [MW]")->check(CLI::NonNegativeNumber);
  app.add_option("--eta", truth.eta, "efficiency");
  app.add_option("--sigma", truth.sigma, "start cost [GBP/MW(cap)]");
  app.add_option("--phi", truth.phi, "fixed cost [GBP/h/MW(cap)]");
  app.add_option("--nu", truth.nu, "variable cost [GBP/MWh]");
  app.add_option("--epsilon", truth.epsilon, "emission factor [tCO2/MWh(fuel)]");
  CLI11_PARSE(app, argc, argv);

  try {
    truth.sigma *= capacity;
    truth.phi *= capacity;
    check_parameter_invariants(truth);
    const auto market = synthetic_market(days, seed, truth);
    const auto dynamics = synthetic_dynamics(market.size(), capacity);
    const auto synth = synthesize(truth, dynamics, market, SolverOptions{}, noise, seed);
    const auto cfg = write_dataset(out_dir, market, dynamics, synth.observed, truth.epsilon);
    std::cout << cfg << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
