#pragma once

#include "auxeig/assembly.hpp"
#include "auxeig/cluster.hpp"
#include "auxeig/eigensolver.hpp"
#include "auxeig/hp_space.hpp"
#include "auxeig/mesh.hpp"

#include <optional>
#include <string>
#include <vector>

namespace auxeig
{

enum class ConstantForm
{
  Interval,
  Full
};

struct ExperimentConfig
{
  DomainSpec domain;
  Family family = Family::P;
  int p_min = 1;
  int p_max = 4;
  int p_ref = 16;
  std::optional<Family> ref_family;  // defaults to `family`
  bool use_reference = true;
  int r = 1;
  std::optional<std::vector<int>> modes;  // 1-based; unset means 1..r
  ConstantForm constant = ConstantForm::Interval;
  bool detect_modes = true;  // slit disk only
  SolverOptions solver;
  AssemblyOptions assembly;
  std::string output_dir = "out";
  std::string format = "csv";
};

// Throws ConfigurationError when the invariants p_min <= p_max < p_ref, r >= 1 fail.
void validate_config(const ExperimentConfig& cfg);
std::vector<int> tracked_modes(const ExperimentConfig& cfg);

// INI-style "key = value" with [domain], [space], [cluster], [solver], [output] sections.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Reference values are NaN when unavailable.
struct ModeRecord
{
  int p = 0;
  int r = 0;
  int k = 0;
  double lambda_hat = 0.0;
  double est_energy_sq = 0.0;
  double est_l2 = 0.0;
  double ref_lambda = 0.0;
  double exact_lambda = 0.0;
  double eig_effectivity = 0.0;
  double ref_source_error = 0.0;
  double err_l2 = 0.0;
  double err_energy = 0.0;
  double l2_effectivity = 0.0;
  double energy_effectivity = 0.0;
  double identity_residual = 0.0;
  int mode_m = 0;  // slit disk only, 0 otherwise
  int mode_n = 0;
};

struct PLevel
{
  int p = 0;
  int dofs_V = 0;
  int dofs_W = 0;
  bool ok = false;
  std::string error;
  std::string error_kind;
  EigenResult pairs;
  std::vector<ClusterReport> clusters;  // cluster sizes 1..r
  std::vector<ModeRecord> modes;
};

struct ReferenceSpectrum
{
  int p = 0;
  Family family = Family::P;
  int dofs = 0;
  EigenResult pairs;
};

struct RunArtifacts
{
  ExperimentConfig config;
  std::optional<ReferenceSpectrum> reference;
  std::vector<PLevel> levels;
  std::vector<std::string> files;
  bool invariant_violation = false;

  int failures() const;
};

RunArtifacts run_experiment(const ExperimentConfig& cfg);

// Writes convergence/cluster/failure files in `format` (csv | json) under
// cfg.output_dir and returns their paths.
std::vector<std::string> emit_report(RunArtifacts& artifacts, const std::string& format);

std::string artifacts_to_json(const RunArtifacts& artifacts);

}  // namespace auxeig
