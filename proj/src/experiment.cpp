#include "auxeig/experiment.hpp"

#include "auxeig/benchmarks.hpp"
#include "auxeig/cholesky.hpp"
#include "auxeig/errors.hpp"
#include "auxeig/source_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

namespace auxeig
{

namespace
{

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::vector<double> square_spectrum(int count)
{
  std::vector<double> v;
  const int n = count + 2;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) v.push_back(std::numbers::pi * std::numbers::pi * (i * i + j * j));
  std::sort(v.begin(), v.end());
  v.resize(count);
  return v;
}

struct Reference
{
  DofMap dofs;
  SpaceForms forms;
  EigenResult pairs;
  std::unique_ptr<SparseCholesky> chol;
};

struct Context
{
  const ExperimentConfig& cfg;
  const Mesh& mesh;
  std::vector<int> modes;
  int npairs = 0;
  const Reference* ref = nullptr;
  std::vector<double> exact;               // analytic eigenvalues, empty if unknown
  std::vector<AnalyticMode> slit_modes;    // slit disk only

  // Best available value of lambda_k (0-based), NaN if none.
  double best_lambda(int k) const
  {
    if (k < static_cast<int>(exact.size())) return exact[k];
    if (ref && k < ref->pairs.values.size()) return ref->pairs.values[k];
    return nan;
  }
};

double interval_constant(const Context& ctx, const Vec& mu, int rr, const EigenResult& pairs)
{
  double b = ctx.best_lambda(rr);
  if (std::isnan(b)) b = pairs.values[rr];
  return constant_C_interval(mu, 0.0, b);
}

double full_constant(const Context& ctx, const Vec& mu, int rr)
{
  std::vector<double> excluded;
  const int known = ctx.exact.empty() ? (ctx.ref ? static_cast<int>(ctx.ref->pairs.values.size()) : 0)
                                      : static_cast<int>(ctx.exact.size());
  for (int k = rr; k < known; ++k) excluded.push_back(ctx.best_lambda(k));
  if (excluded.empty()) throw ConfigurationError("full constant form needs a known spectrum beyond the cluster");
  return constant_C(mu, excluded);
}

ClusterReport make_cluster(const Context& ctx, int p, int rr, const EigenResult& pairs,
                           const std::vector<ErrorFunction>& errs, const FormSet& forms, const Mat& phi_ref)
{
  ClusterReport cr;
  cr.p = p;
  cr.r = rr;
  const Vec mu = pairs.values.head(rr);
  cr.lambda_hat.assign(mu.data(), mu.data() + rr);
  const std::vector<ErrorFunction> sub(errs.begin(), errs.begin() + rr);
  const GramPair gp = gram_matrices(sub, mu, forms.K_WW);

  try
  {
    cr.C = ctx.cfg.constant == ConstantForm::Interval ? interval_constant(ctx, mu, rr, pairs) : full_constant(ctx, mu, rr);
  }
  catch (const PoleError&)
  {
    cr.C = nan;
  }
  const ClusterBounds b = cluster_bounds(gp, cr.C);
  cr.trace_eig_bound = b.eigenvalue_trace;
  cr.trace_gap_bound = std::sqrt(b.gap_squared_trace);

  const SpectralEstimates est = spectral_estimates(gp);
  cr.hausdorff_est = est.lambda_max_H;
  cr.gap_est = est.gap;
  cr.trace_gap_est = est.trace_gap;
  cr.h_tilde_min_eig = Eigen::SelfAdjointEigenSolver<Mat>(gp.H_tilde, Eigen::EigenvaluesOnly).eigenvalues()[0];

  cr.bf_bound = cr.bf_dist = cr.ref_hausdorff = cr.ref_gap = nan;
  std::vector<double> known;
  for (int k = 0; k < rr; ++k) known.push_back(ctx.best_lambda(k));
  if (std::none_of(known.begin(), known.end(), [](double v) { return std::isnan(v); }))
    cr.ref_hausdorff = hausdorff_distance(known, cr.lambda_hat);

  if (ctx.ref)
  {
    std::vector<int> idx(rr);
    for (int k = 0; k < rr; ++k) idx[k] = k;
    const Mat H = reference_H(phi_ref.leftCols(rr), ctx.ref->pairs.vectors, ctx.ref->pairs.values, idx, ctx.ref->forms.K);
    cr.ref_gap = std::sqrt(std::max(0.0, pencil_spectrum(H, gp.G).back()));
    const BauerFike bf = bauer_fike_bound(H, gp.H_tilde, gp.G);
    cr.bf_bound = bf.bound;
    cr.bf_dist = bf.distance;
  }
  return cr;
}

ModeRecord make_mode(const Context& ctx, int p, int k, const FieldEvaluator* field, const EigenResult& pairs,
                     const std::vector<ErrorFunction>& errs, const std::vector<int>& embed, const Mat& phi_ref)
{
  ModeRecord m;
  m.p = p;
  m.r = ctx.cfg.r;
  m.k = k;
  const int j = k - 1;
  m.lambda_hat = pairs.values[j];
  m.est_energy_sq = errs[j].energy_norm * errs[j].energy_norm;
  m.est_l2 = errs[j].l2_norm;
  m.ref_lambda = ctx.ref && j < ctx.ref->pairs.values.size() ? ctx.ref->pairs.values[j] : nan;
  m.exact_lambda = j < static_cast<int>(ctx.exact.size()) ? ctx.exact[j] : nan;
  m.err_l2 = m.err_energy = m.ref_source_error = m.identity_residual = nan;

  if (field && j < static_cast<int>(ctx.slit_modes.size()))
  {
    const ExactErrors ee = exact_error_norms(*field, ctx.slit_modes[j]);
    m.err_l2 = ee.l2_error;
    m.err_energy = ee.energy_error;
  }
  if (ctx.ref)
  {
    const Vec phi = phi_ref.col(j);
    const Vec f = pairs.values[j] * pairs.vectors.col(j);
    m.ref_source_error = reference_source_error(*ctx.ref->chol, ctx.ref->forms, embed, f, pairs.vectors.col(j));
    if (j < ctx.ref->pairs.values.size())
    {
      const Vec psi = ctx.ref->pairs.vectors.col(j);
      m.identity_residual =
          identity_check(phi, psi, ctx.ref->pairs.values[j], m.lambda_hat, ctx.ref->forms.K, ctx.ref->forms.M);
      if (std::isnan(m.err_l2))
      {
        const VectorErrors ve = vector_errors(psi, phi, ctx.ref->forms.K, ctx.ref->forms.M);
        m.err_l2 = ve.l2;
        m.err_energy = ve.energy;
      }
    }
  }
  const Effectivities e = effectivities(errs[j].energy_norm, errs[j].l2_norm, m.lambda_hat, ctx.best_lambda(j),
                                        m.err_l2, m.err_energy);
  m.eig_effectivity = e.eigenvalue.value_or(nan);
  m.l2_effectivity = e.l2.value_or(nan);
  m.energy_effectivity = e.energy.value_or(nan);
  if (field && ctx.cfg.detect_modes)
  {
    const auto [mm, nn] = detect_mode([field](Point2 x) {
      const auto s = field->eval(x);
      return s ? s->value : 0.0;
    });
    m.mode_m = mm;
    m.mode_n = nn;
  }
  return m;
}

PLevel run_level(const Context& ctx, int p)
{
  PLevel lv;
  lv.p = p;
  const DegreeDistribution deg = assign_degrees(ctx.mesh, ctx.cfg.family, p);
  const SpacePair sp = build_auxiliary_degrees(deg);
  const DofMap dofV = build_dof_map(ctx.mesh, deg);
  const DofMap dofW = build_dof_map(ctx.mesh, sp.auxiliary);
  lv.dofs_V = dofV.size;
  lv.dofs_W = dofW.size;
  if (ctx.npairs > dofV.size)
    throw ConfigurationError("p=" + std::to_string(p) + ": space has " + std::to_string(dofV.size) +
                             " functions but " + std::to_string(ctx.npairs) + " pairs are needed");
  const FormSet forms = assemble_forms(ctx.mesh, sp, dofV, dofW, ctx.cfg.assembly);
  lv.pairs = solve_generalized_symmetric(forms.K_VV, forms.M_VV, ctx.npairs, ctx.cfg.solver);
  const int nerr = std::max(ctx.cfg.r, ctx.modes.empty() ? 0 : *std::max_element(ctx.modes.begin(), ctx.modes.end()));
  const auto errs = solve_error_functions(forms, lv.pairs, nerr);

  std::vector<int> embed;
  Mat phi_ref;
  if (ctx.ref)
  {
    embed = embedding(dofV, ctx.ref->dofs);
    phi_ref = embed_coefficients(embed, ctx.ref->dofs.size, Mat(lv.pairs.vectors.leftCols(nerr)));
  }
  for (int rr = 1; rr <= ctx.cfg.r; ++rr) lv.clusters.push_back(make_cluster(ctx, p, rr, lv.pairs, errs, forms, phi_ref));
  for (int k : ctx.modes)
  {
    std::unique_ptr<FieldEvaluator> field;
    if (!ctx.slit_modes.empty()) field = std::make_unique<FieldEvaluator>(ctx.mesh, dofV, lv.pairs.vectors.col(k - 1));
    lv.modes.push_back(make_mode(ctx, p, k, field.get(), lv.pairs, errs, embed, phi_ref));
  }
  lv.ok = true;
  return lv;
}

}  // namespace

int RunArtifacts::failures() const
{
  return static_cast<int>(std::count_if(levels.begin(), levels.end(), [](const PLevel& l) { return !l.ok; }));
}

RunArtifacts run_experiment(const ExperimentConfig& cfg)
{
  validate_config(cfg);
  RunArtifacts art;
  art.config = cfg;
  const Mesh mesh = build_domain_mesh(cfg.domain);

  Context ctx{cfg, mesh, tracked_modes(cfg), 0, nullptr, {}, {}};
  const int maxmode = ctx.modes.empty() ? 0 : *std::max_element(ctx.modes.begin(), ctx.modes.end());
  ctx.npairs = std::max(cfg.r + 1, maxmode);

  if (cfg.domain.domain == DomainType::UnitSquare)
    ctx.exact = square_spectrum(ctx.npairs);
  else if (cfg.domain.domain == DomainType::SlitDisk)
  {
    ctx.slit_modes = slit_disk_spectrum(std::min(ctx.npairs, 100));
    for (const auto& m : ctx.slit_modes) ctx.exact.push_back(m.lambda);
  }

  Reference ref;
  if (cfg.use_reference)
  {
    const DegreeDistribution deg = assign_degrees(mesh, cfg.ref_family.value_or(cfg.family), cfg.p_ref);
    ref.dofs = build_dof_map(mesh, deg);
    ref.forms = assemble_space(mesh, ref.dofs, cfg.assembly);
    ref.pairs = solve_generalized_symmetric(ref.forms.K, ref.forms.M, std::min(ctx.npairs, ref.dofs.size), cfg.solver);
    ref.chol = std::make_unique<SparseCholesky>(ref.forms.K);
    ctx.ref = &ref;
    art.reference = ReferenceSpectrum{cfg.p_ref, cfg.ref_family.value_or(cfg.family), ref.dofs.size, ref.pairs};
  }

  for (int p = cfg.p_min; p <= cfg.p_max; ++p)
  {
    try
    {
      art.levels.push_back(run_level(ctx, p));
    }
    catch (const Error& e)
    {
      PLevel lv;
      lv.p = p;
      lv.error = e.what();
      if (dynamic_cast<const InvariantViolation*>(&e))
      {
        lv.error_kind = "invariant";
        art.invariant_violation = true;
      }
      else if (dynamic_cast<const SolverError*>(&e) || dynamic_cast<const MatrixError*>(&e))
        lv.error_kind = "solver";
      else if (dynamic_cast<const ConfigurationError*>(&e))
        lv.error_kind = "configuration";
      else
        lv.error_kind = "numerical";
      art.levels.push_back(std::move(lv));
    }
  }
  return art;
}

}  // namespace auxeig
