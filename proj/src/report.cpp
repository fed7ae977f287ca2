#include "auxeig/experiment.hpp"

#include "auxeig/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace auxeig
{

namespace
{

using nlohmann::ordered_json;

std::string num(double v)
{
  if (!std::isfinite(v)) return "NA";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ordered_json jnum(double v)
{
  if (!std::isfinite(v)) return nullptr;
  return v;
}

const char* mode_header =
    "p,family,r,k,lambda_hat_k,est_energy_sq_k,ref_lambda_k,eigvalue_effectivity_k,est_l2_k,exact_lambda_k,"
    "ref_source_error_k,err_l2_k,err_energy_k,l2_effectivity_k,energy_effectivity_k,identity_residual_k,mode_m,"
    "mode_n\n";

const char* cluster_header =
    "p,r,trace_eig_bound,trace_gap_bound,hausdorff_est,gap_est,bf_bound,ref_hausdorff,ref_gap,C,trace_gap_est,"
    "bf_dist,h_tilde_min_eig\n";

std::string mode_row(const ModeRecord& m, const std::string& family)
{
  std::string s = std::to_string(m.p) + ',' + family + ',' + std::to_string(m.r) + ',' + std::to_string(m.k);
  for (double v : {m.lambda_hat, m.est_energy_sq, m.ref_lambda, m.eig_effectivity, m.est_l2, m.exact_lambda,
                   m.ref_source_error, m.err_l2, m.err_energy, m.l2_effectivity, m.energy_effectivity,
                   m.identity_residual})
    s += ',' + num(v);
  s += ',' + (m.mode_m ? std::to_string(m.mode_m) : std::string("NA"));
  s += ',' + (m.mode_n ? std::to_string(m.mode_n) : std::string("NA"));
  return s + '\n';
}

std::string cluster_row(const ClusterReport& c)
{
  std::string s = std::to_string(c.p) + ',' + std::to_string(c.r);
  for (double v : {c.trace_eig_bound, c.trace_gap_bound, c.hausdorff_est, c.gap_est, c.bf_bound, c.ref_hausdorff,
                   c.ref_gap, c.C, c.trace_gap_est, c.bf_dist, c.h_tilde_min_eig})
    s += ',' + num(v);
  return s + '\n';
}

ordered_json mode_json(const ModeRecord& m, const std::string& family)
{
  return {{"p", m.p},
          {"family", family},
          {"r", m.r},
          {"k", m.k},
          {"lambda_hat_k", jnum(m.lambda_hat)},
          {"est_energy_sq_k", jnum(m.est_energy_sq)},
          {"ref_lambda_k", jnum(m.ref_lambda)},
          {"eigvalue_effectivity_k", jnum(m.eig_effectivity)},
          {"est_l2_k", jnum(m.est_l2)},
          {"exact_lambda_k", jnum(m.exact_lambda)},
          {"ref_source_error_k", jnum(m.ref_source_error)},
          {"err_l2_k", jnum(m.err_l2)},
          {"err_energy_k", jnum(m.err_energy)},
          {"l2_effectivity_k", jnum(m.l2_effectivity)},
          {"energy_effectivity_k", jnum(m.energy_effectivity)},
          {"identity_residual_k", jnum(m.identity_residual)},
          {"mode_m", m.mode_m ? ordered_json(m.mode_m) : ordered_json(nullptr)},
          {"mode_n", m.mode_n ? ordered_json(m.mode_n) : ordered_json(nullptr)}};
}

ordered_json cluster_json(const ClusterReport& c)
{
  ordered_json lam = ordered_json::array();
  for (double v : c.lambda_hat) lam.push_back(v);
  return {{"p", c.p},
          {"r", c.r},
          {"lambda_hat", lam},
          {"trace_eig_bound", jnum(c.trace_eig_bound)},
          {"trace_gap_bound", jnum(c.trace_gap_bound)},
          {"hausdorff_est", jnum(c.hausdorff_est)},
          {"gap_est", jnum(c.gap_est)},
          {"bf_bound", jnum(c.bf_bound)},
          {"ref_hausdorff", jnum(c.ref_hausdorff)},
          {"ref_gap", jnum(c.ref_gap)},
          {"C", jnum(c.C)},
          {"trace_gap_est", jnum(c.trace_gap_est)},
          {"bf_dist", jnum(c.bf_dist)},
          {"h_tilde_min_eig", jnum(c.h_tilde_min_eig)}};
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string artifacts_to_json(const RunArtifacts& art)
{
  const ExperimentConfig& cfg = art.config;
  const std::string fam = to_string(cfg.family);
  ordered_json j;
  j["domain"] = to_string(cfg.domain.domain);
  j["family"] = fam;
  j["p_min"] = cfg.p_min;
  j["p_max"] = cfg.p_max;
  j["r"] = cfg.r;
  if (art.reference)
  {
    ordered_json vals = ordered_json::array();
    for (Eigen::Index k = 0; k < art.reference->pairs.values.size(); ++k) vals.push_back(art.reference->pairs.values[k]);
    j["reference"] = {{"p_ref", art.reference->p}, {"family", to_string(art.reference->family)},
                      {"dofs", art.reference->dofs}, {"values", vals}};
  }
  else
    j["reference"] = nullptr;
  ordered_json modes = ordered_json::array(), clusters = ordered_json::array(), failures = ordered_json::array();
  for (const PLevel& lv : art.levels)
  {
    if (!lv.ok)
    {
      failures.push_back({{"p", lv.p}, {"kind", lv.error_kind}, {"message", lv.error}});
      continue;
    }
    for (const auto& m : lv.modes) modes.push_back(mode_json(m, fam));
    for (const auto& c : lv.clusters) clusters.push_back(cluster_json(c));
  }
  j["convergence"] = modes;
  j["clusters"] = clusters;
  j["failures"] = failures;
  return j.dump(2) + "\n";
}

std::vector<std::string> emit_report(RunArtifacts& art, const std::string& format)
{
  AUXEIG_REQUIRE(!art.levels.empty(), ContractViolation, "emit_report: no results");
  if (format != "csv" && format != "json") throw ConfigurationError("format must be csv or json");
  const std::filesystem::path dir(art.config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  std::vector<std::string> files;
  if (format == "json")
  {
    const auto path = dir / "report.json";
    write_file(path, artifacts_to_json(art));
    files.push_back(path.string());
  }
  else
  {
    const std::string fam = to_string(art.config.family);
    std::string modes = mode_header, clusters = cluster_header, failures = "p,kind,message\n";
    bool any_modes = false, any_fail = false;
    for (const PLevel& lv : art.levels)
    {
      if (!lv.ok)
      {
        std::string msg = lv.error;
        for (char& c : msg)
          if (c == ',' || c == '\n') c = ';';
        failures += std::to_string(lv.p) + ',' + lv.error_kind + ',' + msg + '\n';
        any_fail = true;
        continue;
      }
      for (const auto& m : lv.modes)
      {
        modes += mode_row(m, fam);
        any_modes = true;
      }
      for (const auto& c : lv.clusters) clusters += cluster_row(c);
    }
    if (any_modes || !tracked_modes(art.config).empty())
    {
      write_file(dir / "convergence.csv", modes);
      files.push_back((dir / "convergence.csv").string());
    }
    write_file(dir / "clusters.csv", clusters);
    files.push_back((dir / "clusters.csv").string());
    if (any_fail)
    {
      write_file(dir / "failures.csv", failures);
      files.push_back((dir / "failures.csv").string());
    }
  }
  art.files.insert(art.files.end(), files.begin(), files.end());
  return files;
}

}  // namespace auxeig
