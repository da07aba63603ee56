//
// Copyright 2026 The tukeydp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "tukeydp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "tukeydp/kappa_select.hpp"

namespace tdp {

void RunConfig::Validate() const {
  DPParams p;
  p.epsilon = epsilon;
  p.delta = delta;
  p.alpha = alpha;
  p.beta = beta;
  p.Validate();
  if (grid_exp < 4 || grid_exp > 32) throw Error(ErrorCode::kInvalidArgument, "grid exponent must lie in [4, 32]");
  if (c_d != 0.0 && !(c_d >= 1.0)) throw Error(ErrorCode::kInvalidArgument, "c_d must be >= 1");
  if (m_override < 0) throw Error(ErrorCode::kInvalidArgument, "m must be >= 0");
  if (cell_cap < 1) throw Error(ErrorCode::kInvalidArgument, "cell cap must be >= 1");
}

MeasureSet AppliedMeasures(const std::vector<Vec>& points, int dim) {
  MeasureSet m;
  if (points.empty()) return m;
  Polytope hull = HullAny(points, dim);
  m.diameter = DiameterExact(hull).value;
  m.width = hull.IsFullDim() ? WidthExact(hull).value : 0.0;
  m.volume = Volume(hull);
  m.ball_radius = MinEnclosingBall(points).radius;
  return m;
}

double PipelineReport::total_epsilon() const {
  double s = 0.0;
  for (const StageRecord& r : stages) s += r.budget.epsilon_spent();
  return s;
}

double PipelineReport::total_delta() const {
  double s = 0.0;
  for (const StageRecord& r : stages) s += r.budget.delta_spent();
  return s;
}

namespace {

std::string Fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

PipelineReport RunPipeline(const PointSet& p, const RunConfig& cfg) {
  cfg.Validate();
  const int d = p.dim;
  if (d < 1 || d > 3) throw Error(ErrorCode::kUnsupportedDimension, "pipeline supports d <= 3");
  if (p.grid_exp != cfg.grid_exp)
    throw Error(ErrorCode::kInvalidArgument, "point set grid exponent differs from the config");

  PipelineReport rep;
  rep.dim = d;
  rep.n = static_cast<int>(p.size());
  rep.config = cfg;
  rep.noise_disabled = !cfg.seed.has_value();
  NoiseSource root = cfg.seed ? NoiseSource::Seeded(*cfg.seed) : NoiseSource::Disabled();

  DPParams prm;
  prm.epsilon = cfg.epsilon;
  prm.delta = cfg.delta;
  prm.alpha = cfg.alpha;
  prm.beta = cfg.beta;

  // Errors inside a stage surface as StageFailure tagged with the stage,
  // except the codes that mean "input too small" or "input invalid".
  auto stage = [&](const std::string& name, const std::function<void(StageRecord&)>& body) {
    StageRecord rec;
    rec.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(rec);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kAbortTooSmall || e.code() == ErrorCode::kDegenerateInput) throw;
      throw Error(ErrorCode::kStageFailure, name + ": " + e.what());
    }
    rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    rep.stages.push_back(std::move(rec));
  };

  RegionModel model;
  stage("stage0_preprocess", [&](StageRecord& rec) {
    NoiseSource noise = root.Split("stage0");
    rep.noisy_count = static_cast<double>(p.size()) + noise.Laplace(1.0 / cfg.epsilon);
    rec.budget.Charge("noisy_count", cfg.epsilon);
    rep.affine_rank = HullAny(p.points, d).affine_dim;
    rec.notes.push_back("rank check on the raw data is NOT private: affine rank " +
                        std::to_string(rep.affine_rank));
    if (rep.affine_rank < d)
      throw Error(ErrorCode::kDegenerateInput, "stage0_preprocess: data spans only " +
                                                   std::to_string(rep.affine_rank) +
                                                   " dimensions (NOT private check)");

    // Kernel depth loss at the largest ratio the box transform can leave.
    rep.delta_kernel = KernelFatGamma(d, cfg.grid_exp, RelativeFatConstant(d), prm);
    rep.m_prescribed = cfg.m_override > 0 ? cfg.m_override : PrescribedM(d, cfg.grid_exp, rep.delta_kernel);
    // The size check n >= 2(d+1)m, read off the noisy count, bounds m.
    rep.m_cap = static_cast<int>(std::max(0.0, std::floor(rep.noisy_count / (2.0 * (d + 1)))));
    rep.m = static_cast<int>(std::min<int64_t>(rep.m_prescribed, rep.m_cap));
    if (rep.m < rep.m_prescribed)
      rep.warnings.push_back("m capped from " + std::to_string(rep.m_prescribed) + " to " +
                             std::to_string(rep.m) + " by the noisy size check");
    const int m_min = static_cast<int>(std::ceil(16.0 / cfg.epsilon));
    if (rep.m < m_min)
      throw Error(ErrorCode::kAbortTooSmall,
                  "noisy count " + Fmt(rep.noisy_count) + " supports m = " + std::to_string(rep.m) +
                      " but the selector needs m >= " + std::to_string(m_min) + " (n >= " +
                      std::to_string(2 * (d + 1) * m_min) + ")");
    model = RegionModel::FromPoints(p);
  });

  stage("stage1_select_kappa", [&](StageRecord& rec) {
    NoiseSource noise = root.Split("stage1");
    KappaQueryTable table = KappaQueryTable::FromChain(model.chain, rep.m);
    KappaSelection s = ShiftedExpMechanism(table, cfg.epsilon, noise);
    rec.budget.Absorb(s.budget);
    rep.kappa_raw = s.output;
    rep.chosen_kappa = s.clamped;
    rep.q_max = s.q_max;
    if (s.out_of_range)
      rep.warnings.push_back("selected kappa " + std::to_string(s.output) + " clamped to " +
                             std::to_string(s.clamped));
    rec.notes.push_back("q_max " + std::to_string(s.q_max));
  });
  const int kappa = rep.chosen_kappa;
  prm.kappa = kappa;

  const double c_abs = AbsoluteFatConstant(d);
  stage("stage2_absfat_probe", [&](StageRecord& rec) {
    if (!cfg.absfat_probe) {
      rec.status = "skipped";
      rec.notes.push_back("disabled by config");
      return;
    }
    const double zeta = cfg.alpha / (c_abs * std::sqrt(static_cast<double>(d)));
    const double cells = std::pow(std::ceil(1.0 / zeta), d);
    if (cells > static_cast<double>(cfg.cell_cap)) {
      rec.status = "skipped";
      rec.notes.push_back("grid kernel at c_d = " + Fmt(c_abs) + " needs " + Fmt(cells) +
                          " cells, above the cap " + std::to_string(cfg.cell_cap));
      return;
    }
    NoiseSource noise = root.Split("stage2");
    const double dup = std::sqrt(static_cast<double>(d)), blo = 1.0 / c_abs;
    DPParams probe = prm;
    if (!noise.disabled())
      probe.kappa = kappa + static_cast<int>(std::ceil(
                                SvtDelta(WidthSteps(cfg.alpha, dup, blo), cfg.epsilon, cfg.beta)));
    EstimateReport w = DpWidth(model, probe, dup, blo, noise);
    rec.budget.Absorb(w.budget);
    rep.absfat = w.value >= (1.0 + cfg.alpha) / c_abs;
    rec.notes.push_back("width estimate " + Fmt(w.value) + " at depth " + std::to_string(probe.kappa) +
                        (rep.absfat ? ": absolutely fat" : ": not certified fat"));
  });

  RegionModel work = model;
  stage("stage3_bbox", [&](StageRecord& rec) {
    if (rep.absfat) {
      rec.status = "skipped";
      rec.notes.push_back("absolute fatness established in stage 2");
      return;
    }
    NoiseSource noise = root.Split("stage3");
    BoxEstimate b = BboxPrivate(model, prm, noise);
    rec.budget.Absorb(b.report.budget);
    rep.box = b.box;
    rep.transform = MakeFatteningTransform(b.box, true);
    work = TransformModel(model, *rep.transform);
    rec.notes.push_back("box volume " + Fmt(b.box.Volume()) + ", transformed chain depth " +
                        std::to_string(work.chain.kappa_max()));
  });

  stage("stage4_kernel", [&](StageRecord& rec) {
    NoiseSource noise = root.Split("stage4");
    if (rep.absfat) {
      rep.kernel_c = c_abs;
      rep.kernel = KernelAbsFat(work, prm, c_abs, noise, cfg.cell_cap);
    } else {
      double c = cfg.c_d;
      if (c <= 0 && cfg.select_fatness) {
        FatnessSelectResult fs = FatnessSelect(work, prm, noise, RelativeFatConstant(d));
        rec.budget.Absorb(fs.budget);
        if (fs.choice) {
          c = fs.choice->c;
          rep.fatness_index = fs.choice->index;
        } else {
          rec.notes.push_back("fatness selection returned no level");
        }
      }
      if (c <= 0) c = RelativeFatConstant(d);
      rep.kernel_c = c;
      rep.kernel = KernelFat(work, prm, c, noise);
    }
    rec.budget.Absorb(rep.kernel.report.budget);
    if (rep.transform) {
      for (Vec& x : rep.kernel.points) x = rep.transform->Inverse(x);
      if (rep.kernel.base) rep.kernel.base = rep.transform->Inverse(*rep.kernel.base);
    }
    rec.notes.push_back(std::to_string(rep.kernel.points.size()) + " kernel points at c_d = " + Fmt(rep.kernel_c));
  });

  stage("stage5_report", [&](StageRecord& rec) {
    rep.measures = AppliedMeasures(rep.kernel.points, d);
    rep.outer_kappa = rep.noise_disabled
                          ? kappa
                          : std::max(1, kappa - static_cast<int>(std::ceil(rep.kernel.gamma_kernel)));
    if (model.chain.Has(kappa) && model.chain.Has(rep.outer_kappa) && !rep.kernel.points.empty()) {
      rep.kernel.certification = KernelCertify(rep.kernel.points, model.chain.At(kappa),
                                               model.chain.At(rep.outer_kappa), cfg.alpha);
    } else {
      rec.notes.push_back("no certification: D(kappa) empty or kernel empty");
    }
  });
  return rep;
}

}  // namespace tdp
