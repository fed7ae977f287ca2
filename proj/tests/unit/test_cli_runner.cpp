#include "auxeig/errors.hpp"
#include "auxeig/experiment.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace auxeig;
namespace fs = std::filesystem;

#ifndef AUXEIG_TEST_TMP
#define AUXEIG_TEST_TMP "auxeig_test_tmp"
#endif

namespace
{

std::string tmpdir(const std::string& name)
{
  const fs::path p = fs::path(AUXEIG_TEST_TMP) / name;
  fs::remove_all(p);
  return p.string();
}

std::string slurp(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int data_rows(const std::string& path)
{
  std::ifstream in(path);
  std::string line;
  int n = -1;  // header
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

ExperimentConfig square(int pmin, int pmax, int r, int nx = 4)
{
  ExperimentConfig c;
  c.domain.domain = DomainType::UnitSquare;
  c.domain.square_divisions = nx;
  c.p_min = pmin;
  c.p_max = pmax;
  c.p_ref = pmax + 3;
  c.r = r;
  return c;
}

}  // namespace

TEST_CASE("config parsing")
{
  const ExperimentConfig c = parse_config(R"(
# comment
[domain]
domain = bridge
bc_case = 9
bridge_bc = n
grading_layers = 3
grading_factor = 0.2

[space]
family = hp
p_min = 2
p_max = 5
p_ref = 9
reference = true
quad_increment = 4

[cluster]
r = 6
modes = 1-3,5
constant = full

[solver]
tol = 1e-9
seed = 42

[output]
dir = results
format = json
)");
  CHECK(c.domain.domain == DomainType::Bridge);
  CHECK(c.domain.bc_case == 9);
  CHECK(c.domain.bridge_bc == BoundaryCondition::Neumann);
  CHECK(c.domain.grading_layers == 3);
  CHECK(c.domain.grading_factor == 0.2);
  CHECK(c.family == Family::HP);
  CHECK(c.p_min == 2);
  CHECK(c.p_max == 5);
  CHECK(c.p_ref == 9);
  CHECK(c.assembly.quad_increment == 4);
  CHECK(c.r == 6);
  CHECK(*c.modes == std::vector<int>{1, 2, 3, 5});
  CHECK(c.constant == ConstantForm::Full);
  CHECK(c.solver.tol == 1e-9);
  CHECK(c.solver.seed == 42u);
  CHECK(c.output_dir == "results");
  CHECK(c.format == "json");
  CHECK_NOTHROW(validate_config(c));

  const ExperimentConfig d = parse_config("[domain]\ndomain = unit_square\n");
  CHECK(d.family == Family::P);
  CHECK(d.r == 1);
  CHECK(tracked_modes(d) == std::vector<int>{1});
  CHECK(d.format == "csv");
  CHECK(parse_config("[domain]\ndomain = unit_square\n[cluster]\nmodes =\n").modes->empty());

  CHECK_THROWS_AS(parse_config("[space]\nfamily = p\n"), ConfigurationError);
  CHECK_THROWS_AS(parse_config("[domain]\ndomain = unit_square\ncolour = red\n"), ConfigurationError);
  CHECK_THROWS_AS(parse_config("[domain]\ndomain = moon\n"), ConfigurationError);
  CHECK_THROWS_AS(parse_config("[domain]\ndomain = unit_square\n[space]\np_max = four\n"), ConfigurationError);
  CHECK_THROWS_AS(parse_config("[domain]\ndomain = unit_square\n[cluster]\nmodes = 3-1\n"), ConfigurationError);
  CHECK_THROWS_AS(load_config("/nonexistent/auxeig.ini"), ConfigurationError);
}

TEST_CASE("config validation")
{
  ExperimentConfig c = square(1, 4, 2);
  CHECK_NOTHROW(validate_config(c));
  c.p_ref = 4;
  CHECK_THROWS_AS(validate_config(c), ConfigurationError);
  c.use_reference = false;
  CHECK_NOTHROW(validate_config(c));
  c = square(3, 2, 1);
  CHECK_THROWS_AS(validate_config(c), ConfigurationError);
  c = square(1, 2, 0);
  CHECK_THROWS_AS(validate_config(c), ConfigurationError);
  c = square(1, 2, 1);
  c.modes = std::vector<int>{0};
  CHECK_THROWS_AS(validate_config(c), ConfigurationError);
  c = square(1, 2, 1);
  c.format = "xml";
  CHECK_THROWS_AS(validate_config(c), ConfigurationError);
  c = square(1, 2, 1);
  c.domain.domain = DomainType::Bridge;
  CHECK_THROWS_AS(validate_config(c), ConfigurationError);
  c.domain.bc_case = 11;
  c.domain.bridge_bc = BoundaryCondition::Dirichlet;
  CHECK_THROWS_AS(validate_config(c), ConfigurationError);
  // Invalid configs are rejected before any computation.
  c = square(1, 4, 2);
  c.p_ref = 3;
  c.output_dir = tmpdir("never_written");
  CHECK_THROWS_AS(run_experiment(c), ConfigurationError);
  CHECK_FALSE(fs::exists(c.output_dir));
}

TEST_CASE("unit square sweep")
{
  ExperimentConfig c = square(1, 4, 3);
  c.output_dir = tmpdir("square");
  RunArtifacts art = run_experiment(c);
  REQUIRE(art.levels.size() == 4);
  CHECK(art.failures() == 0);
  REQUIRE(art.reference.has_value());
  CHECK(art.reference->p == 7);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  for (std::size_t i = 0; i < art.levels.size(); ++i)
  {
    const PLevel& lv = art.levels[i];
    CHECK(lv.p == static_cast<int>(i) + 1);
    REQUIRE(lv.clusters.size() == 3);
    for (int r = 1; r <= 3; ++r) CHECK(lv.clusters[r - 1].r == r);
    REQUIRE(lv.modes.size() == 3);
    CHECK(lv.modes[0].exact_lambda == doctest::Approx(2 * pi2));
    // Cluster size 2 splits the degenerate pair 5 pi^2, so C has a pole there.
    CHECK(std::isnan(lv.clusters[1].C));
    CHECK(std::isnan(lv.clusters[1].trace_eig_bound));
    CHECK(std::isfinite(lv.clusters[2].C));
    for (const ClusterReport& cr : lv.clusters)
    {
      if (cr.r != 2) CHECK(cr.trace_eig_bound >= 0);
      CHECK(cr.hausdorff_est >= 0);
      CHECK(cr.gap_est >= 0);
      CHECK(cr.trace_gap_est >= cr.gap_est - 1e-14);
      CHECK(std::isfinite(cr.ref_hausdorff));
      CHECK(cr.bf_dist <= cr.bf_bound + 1e-12);
    }
    if (i > 0)
      for (int k = 0; k < 3; ++k) CHECK(lv.pairs.values[k] <= art.levels[i - 1].pairs.values[k] + 1e-9);
  }

  const auto files = emit_report(art, "csv");
  REQUIRE(files.size() == 2);
  CHECK(data_rows(c.output_dir + "/convergence.csv") == 4 * 3);
  CHECK(data_rows(c.output_dir + "/clusters.csv") == 4 * 3);
  std::ifstream in(c.output_dir + "/convergence.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("p,family,r,k,lambda_hat_k,est_energy_sq_k,ref_lambda_k,eigvalue_effectivity_k", 0) == 0);
  std::ifstream cin(c.output_dir + "/clusters.csv");
  std::getline(cin, header);
  CHECK(header.rfind("p,r,trace_eig_bound,trace_gap_bound,hausdorff_est,gap_est,bf_bound,ref_hausdorff,ref_gap", 0) == 0);

  // JSON round trip is bit-exact.
  CHECK(emit_report(art, "json").size() == 1);
  const auto j = nlohmann::json::parse(slurp(c.output_dir + "/report.json"));
  REQUIRE(j["convergence"].size() == 12);
  for (const auto& row : j["convergence"])
  {
    const PLevel& lv = art.levels[row["p"].get<int>() - 1];
    const int k = row["k"].get<int>();
    CHECK(row["lambda_hat_k"].get<double>() == lv.modes[k - 1].lambda_hat);
    CHECK(row["est_energy_sq_k"].get<double>() == lv.modes[k - 1].est_energy_sq);
  }
  for (const auto& row : j["clusters"])
  {
    const ClusterReport& cr = art.levels[row["p"].get<int>() - 1].clusters[row["r"].get<int>() - 1];
    CHECK(row["hausdorff_est"].get<double>() == cr.hausdorff_est);
    CHECK(row["gap_est"].get<double>() == cr.gap_est);
  }
  CHECK(j["reference"]["p_ref"] == 7);
}

TEST_CASE("tracked modes control the convergence file")
{
  ExperimentConfig c = square(1, 2, 2);
  c.use_reference = false;
  c.modes = std::vector<int>{};
  c.output_dir = tmpdir("nomodes");
  RunArtifacts art = run_experiment(c);
  const auto files = emit_report(art, "csv");
  REQUIRE(files.size() == 1);
  CHECK(fs::path(files[0]).filename() == "clusters.csv");
  CHECK_FALSE(fs::exists(c.output_dir + "/convergence.csv"));

  c.modes = std::vector<int>{4};
  c.output_dir = tmpdir("mode4");
  art = run_experiment(c);
  emit_report(art, "csv");
  CHECK(data_rows(c.output_dir + "/convergence.csv") == 2);
  CHECK(art.levels[0].modes[0].k == 4);
}

TEST_CASE("identical runs produce identical files")
{
  ExperimentConfig c = square(1, 3, 2);
  c.solver.dense_threshold = 1;
  std::string out[2];
  for (int i = 0; i < 2; ++i)
  {
    c.output_dir = tmpdir("det" + std::to_string(i));
    RunArtifacts art = run_experiment(c);
    emit_report(art, "csv");
    out[i] = slurp(c.output_dir + "/convergence.csv") + slurp(c.output_dir + "/clusters.csv");
  }
  CHECK(!out[0].empty());
  CHECK(out[0] == out[1]);
}

TEST_CASE("a failing p level does not affect the others")
{
  // A 2x2 Dirichlet square at p = 1 has a single interior dof, too few for r = 2.
  ExperimentConfig c = square(1, 3, 2, 2);
  c.output_dir = tmpdir("partial");
  RunArtifacts art = run_experiment(c);
  REQUIRE(art.levels.size() == 3);
  CHECK_FALSE(art.levels[0].ok);
  CHECK(!art.levels[0].error.empty());
  CHECK(art.levels[1].ok);
  CHECK(art.levels[2].ok);
  CHECK(art.failures() == 1);
  CHECK_FALSE(art.invariant_violation);

  ExperimentConfig alone = square(2, 3, 2, 2);
  alone.output_dir = tmpdir("partial_ref");
  const RunArtifacts ref = run_experiment(alone);
  CHECK(ref.levels[0].pairs.values == art.levels[1].pairs.values);
  CHECK(ref.levels[1].clusters[1].hausdorff_est == art.levels[2].clusters[1].hausdorff_est);

  const auto files = emit_report(art, "csv");
  CHECK(fs::exists(c.output_dir + "/failures.csv"));
  CHECK(data_rows(c.output_dir + "/failures.csv") == 1);
  CHECK(files.size() == 3);

  ExperimentConfig all = square(1, 1, 2, 2);
  all.use_reference = false;
  const RunArtifacts none = run_experiment(all);
  CHECK(none.failures() == static_cast<int>(none.levels.size()));
}

TEST_CASE("unwritable output directory")
{
  ExperimentConfig c = square(1, 1, 1);
  c.use_reference = false;
  const std::string blocker = tmpdir("blocker");
  fs::create_directories(fs::path(blocker).parent_path());
  std::ofstream(blocker) << "file, not a directory";
  c.output_dir = blocker + "/sub";
  RunArtifacts art = run_experiment(c);
  CHECK_THROWS_AS(emit_report(art, "csv"), IoError);
}

TEST_CASE("bridge cluster of two converges")
{
  ExperimentConfig c;
  c.domain.domain = DomainType::Bridge;
  c.domain.bc_case = 2;
  c.domain.bridge_bc = BoundaryCondition::Dirichlet;
  c.domain.grading_layers = 4;
  c.family = Family::HP;
  c.p_min = 1;
  c.p_max = 5;
  c.p_ref = 9;
  c.r = 2;
  c.output_dir = tmpdir("bridge");
  const RunArtifacts art = run_experiment(c);
  REQUIRE(art.failures() == 0);
  const ClusterReport& first = art.levels.front().clusters[1];
  const ClusterReport& last = art.levels.back().clusters[1];
  CHECK(last.ref_hausdorff < first.ref_hausdorff);
  CHECK(last.hausdorff_est < first.hausdorff_est);
  for (const PLevel& lv : art.levels) CHECK(lv.clusters[1].bf_dist <= lv.clusters[1].bf_bound + 1e-12);
}
