#include "auxeig/benchmarks.hpp"
#include "auxeig/errors.hpp"
#include "auxeig/experiment.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

using namespace auxeig;

namespace
{

struct Globals
{
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format;
};

int finish(RunArtifacts& art, const Globals& g)
{
  const std::string fmt = g.format.empty() ? art.config.format : g.format;
  for (const auto& f : emit_report(art, fmt)) std::cout << "wrote " << f << '\n';
  for (const PLevel& lv : art.levels)
    if (!lv.ok) std::cerr << "p=" << lv.p << " failed (" << lv.error_kind << "): " << lv.error << '\n';
  if (art.invariant_violation) return 3;
  if (art.failures() == static_cast<int>(art.levels.size())) return 2;
  return 0;
}

void apply_globals(ExperimentConfig& cfg, const Globals& g)
{
  if (!g.out.empty()) cfg.output_dir = g.out;
  if (g.seed) cfg.solver.seed = *g.seed;
  if (!g.format.empty()) cfg.format = g.format;
}

void print_comparison(const RunArtifacts& art, const std::vector<double>& table)
{
  const PLevel* last = nullptr;
  for (const PLevel& lv : art.levels)
    if (lv.ok) last = &lv;
  if (!last) return;
  std::printf("%4s %20s %20s %12s\n", "k", "computed", "table", "rel.diff");
  for (std::size_t k = 0; k < table.size() && k < static_cast<std::size_t>(last->pairs.values.size()); ++k)
  {
    const double v = last->pairs.values[k];
    std::printf("%4zu %20.11f %20.11f %12.3e\n", k + 1, v, table[k], std::abs(v - table[k]) / table[k]);
  }
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"hp-FEM Laplace eigenvalue workbench with auxiliary-subspace cluster estimates"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Output directory");
  app.add_option("--seed", g.seed, "Random seed for the eigensolver start block");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"csv", "json"}));

  auto* run = app.add_subcommand("run", "Run an experiment described by a config file");
  std::string config_path;
  run->add_option("--config", config_path, "Config file")->required();

  auto* bench = app.add_subcommand("bench", "Preset benchmark experiments");
  bench->require_subcommand(1);

  auto* slit = bench->add_subcommand("slit-disk", "Slit disk, graded mesh, hp family, analytic modes");
  int slit_p = 8, slit_modes = 12, slit_layers = 10, slit_pref = 0;
  bool slit_nodetect = false;
  slit->add_option("--p", slit_p, "Largest degree")->check(CLI::Range(1, 20));
  slit->add_option("--modes", slit_modes, "Number of tracked modes")->check(CLI::Range(1, 100));
  slit->add_option("--layers", slit_layers, "Grading layers")->check(CLI::NonNegativeNumber);
  slit->add_option("--p-ref", slit_pref, "Reference degree (0: no reference)");
  slit->add_flag("--no-detect", slit_nodetect, "Skip mode detection");

  auto* iso = bench->add_subcommand("isospectral", "Isospectral half-disk pair");
  int iso_which = 1, iso_p = 10, iso_pref = 12, iso_layers = 10;
  iso->add_option("--which", iso_which, "Problem 1 or 2")->required()->check(CLI::IsMember({1, 2}));
  iso->add_option("--p", iso_p, "Largest degree")->check(CLI::Range(1, 20));
  iso->add_option("--p-ref", iso_pref, "Reference degree");
  iso->add_option("--layers", iso_layers, "Grading layers")->check(CLI::NonNegativeNumber);

  auto* bridge = bench->add_subcommand("bridge", "Two disks joined by a bridge");
  int br_case = 2, br_p = 8, br_pref = 10, br_layers = 10, br_r = 12;
  std::string br_bc = "d";
  bridge->add_option("--case", br_case, "Boundary configuration 1..10")->required()->check(CLI::Range(1, 10));
  bridge->add_option("--bridge", br_bc, "Bridge sides: d or n")->required()->check(CLI::IsMember({"d", "n"}));
  bridge->add_option("--p", br_p, "Largest degree")->check(CLI::Range(1, 20));
  bridge->add_option("--p-ref", br_pref, "Reference degree");
  bridge->add_option("--layers", br_layers, "Grading layers")->check(CLI::NonNegativeNumber);
  bridge->add_option("--r", br_r, "Largest cluster size")->check(CLI::Range(1, 40));

  auto* tables = app.add_subcommand("tables", "Print the built-in reference eigenvalue tables");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try
  {
    if (*tables)
    {
      for (const auto& t : reference_tables())
      {
        std::cout << "# " << t.label << '\n';
        for (std::size_t k = 0; k < t.values.size(); ++k) std::printf("%zu %.12g\n", k + 1, t.values[k]);
      }
      return 0;
    }
    if (*run)
    {
      ExperimentConfig cfg = load_config(config_path);
      apply_globals(cfg, g);
      validate_config(cfg);
      RunArtifacts art = run_experiment(cfg);
      return finish(art, g);
    }

    ExperimentConfig cfg;
    cfg.family = Family::HP;
    cfg.output_dir = "out";
    if (*slit)
    {
      cfg.domain.domain = DomainType::SlitDisk;
      cfg.domain.grading_layers = slit_layers;
      cfg.p_max = slit_p;
      cfg.use_reference = slit_pref > 0;
      cfg.p_ref = slit_pref;
      cfg.r = 1;
      std::vector<int> m(slit_modes);
      for (int k = 0; k < slit_modes; ++k) m[k] = k + 1;
      cfg.modes = m;
      cfg.detect_modes = !slit_nodetect;
    }
    else if (*iso)
    {
      cfg.domain.domain = iso_which == 1 ? DomainType::HalfDisk1 : DomainType::HalfDisk2;
      cfg.domain.grading_layers = iso_layers;
      cfg.p_max = iso_p;
      cfg.p_ref = iso_pref;
      cfg.r = 15;
    }
    else
    {
      cfg.domain.domain = DomainType::Bridge;
      cfg.domain.bc_case = br_case;
      cfg.domain.bridge_bc = br_bc == "d" ? BoundaryCondition::Dirichlet : BoundaryCondition::Neumann;
      cfg.domain.grading_layers = br_layers;
      cfg.p_max = br_p;
      cfg.p_ref = br_pref;
      cfg.r = br_r;
    }
    apply_globals(cfg, g);
    validate_config(cfg);
    RunArtifacts art = run_experiment(cfg);
    const int code = finish(art, g);
    if (*iso) print_comparison(art, reference_table("isospectral").values);
    if (*bridge && br_case == 2 && br_bc == "d") print_comparison(art, reference_table("bridge_dirichlet_case2").values);
    if (*bridge && br_case == 9 && br_bc == "n") print_comparison(art, reference_table("bridge_neumann_case9").values);
    return code;
  }
  catch (const ConfigurationError& e)
  {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  }
  catch (const InvariantViolation& e)
  {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  }
  catch (const IoError& e)
  {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 1;
  }
  catch (const Error& e)
  {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 2;
  }
}
