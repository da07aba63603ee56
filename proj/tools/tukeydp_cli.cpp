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

// tukeydp: exact Tukey geometry and its private releases from the shell.
// Exit codes: 0 ok, 2 validation, 3 abort-too-small, 4 stage failure.

#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tukeydp/bbox.hpp"
#include "tukeydp/dp_geometry.hpp"
#include "tukeydp/io.hpp"
#include "tukeydp/kappa_select.hpp"
#include "tukeydp/kernel.hpp"
#include "tukeydp/pipeline.hpp"
#include "tukeydp/report.hpp"

namespace {

using namespace tdp;

struct Common {
  double epsilon = 1.0;
  double delta = 1e-6;
  double alpha = 0.1;
  double beta = 0.05;
  int kappa = 1;
  std::optional<uint64_t> seed;
  bool no_noise = false;
  std::string input;
  std::string output;
  std::string format = "json";
  int dim = 0;
  int grid_exp = 8;

  DPParams Params() const {
    DPParams p;
    p.epsilon = epsilon;
    p.delta = delta;
    p.alpha = alpha;
    p.beta = beta;
    p.kappa = kappa;
    p.Validate();
    return p;
  }
  // An unseeded private run draws its seed and reports it.
  uint64_t Seed() const {
    if (seed) return *seed;
    std::random_device rd;
    return (static_cast<uint64_t>(rd()) << 32) | rd();
  }
  NoiseSource Noise(const std::string& tag, std::optional<uint64_t>* used = nullptr) const {
    if (no_noise) return NoiseSource::Disabled();
    uint64_t s = Seed();
    if (used) *used = s;
    return NoiseSource::Seeded(s).Split(tag);
  }
  PointSet Points() const {
    if (input.empty()) throw Error(ErrorCode::kInvalidArgument, "--input is required");
    return LoadPoints(input, dim, grid_exp);
  }
};

void AddCommon(CLI::App* sub, Common& c) {
  sub->add_option("--epsilon", c.epsilon, "privacy parameter epsilon")->capture_default_str();
  sub->add_option("--delta", c.delta, "privacy parameter delta")->capture_default_str();
  sub->add_option("--alpha", c.alpha, "approximation factor")->capture_default_str();
  sub->add_option("--beta", c.beta, "failure probability")->capture_default_str();
  sub->add_option("--kappa", c.kappa, "depth level")->capture_default_str();
  auto* seed = sub->add_option("--seed", c.seed, "noise seed");
  auto* nn = sub->add_flag("--no-noise", c.no_noise, "disable all noise (voids privacy; testing only)");
  seed->excludes(nn);
  sub->add_option("--input", c.input, "points: CSV or JSON array of arrays");
  sub->add_option("--output", c.output, "output path (default stdout)");
  sub->add_option("--format", c.format, "json | svg (gen: csv | json)")->capture_default_str();
  sub->add_option("--dim", c.dim, "dimension (default: inferred)");
  sub->add_option("--grid-exp", c.grid_exp, "grid exponent")->capture_default_str();
}

void Emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
  } else {
    WriteTextFile(c.output, text);
  }
}

void EmitJson(const Common& c, const std::string& command, Json result) {
  result["private"] = !c.no_noise;
  Emit(c, Dump(Envelope(command, std::move(result))));
}

Vec ParseVec(const std::string& s) {
  Vec v;
  std::stringstream ss(s);
  std::string f;
  while (std::getline(ss, f, ',')) {
    try {
      size_t pos = 0;
      v.push_back(std::stod(f, &pos));
      if (pos != f.size()) throw std::invalid_argument(f);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad coordinate '" + f + "' in '" + s + "'");
    }
  }
  return v;
}

bool WantSvg(const Common& c) {
  if (c.format == "svg") return true;
  if (c.format != "json") throw Error(ErrorCode::kInvalidArgument, "--format must be json or svg");
  return false;
}

int ExitCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kAbortTooSmall:
      return 3;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError:
    case ErrorCode::kOffGridPoint:
    case ErrorCode::kIOError:
    case ErrorCode::kUnsupportedDimension:
    case ErrorCode::kDegenerateInput:
    case ErrorCode::kMTooSmall:
      return 2;
    default:
      return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Tukey depth geometry and differentially private releases"};
  app.require_subcommand(1);
  Common c;

  // depth
  std::vector<std::string> queries;
  auto* depth = app.add_subcommand("depth", "exact Tukey depth of query points (non-private)");
  AddCommon(depth, c);
  depth->add_option("--query", queries, "query point x1,x2,...")->required();
  depth->callback([&] {
    PointSet p = c.Points();
    Json out = Json::array();
    for (const std::string& q : queries) {
      Vec x = ParseVec(q);
      if (static_cast<int>(x.size()) != p.dim) throw Error(ErrorCode::kInvalidArgument, "query dimension mismatch");
      out.push_back({{"point", ToJson(x)}, {"depth", TukeyDepth(x, p)}});
    }
    c.no_noise = true;
    EmitJson(c, "depth", {{"depths", out}});
  });

  // region
  auto* region = app.add_subcommand("region", "exact Tukey region D(kappa) (non-private)");
  AddCommon(region, c);
  region->callback([&] {
    PointSet p = c.Points();
    std::optional<Polytope> r = TukeyRegion(p, c.kappa);
    c.no_noise = true;
    if (WantSvg(c)) {
      SvgScene s;
      s.points = p.points;
      if (r) s.regions.push_back({"D(" + std::to_string(c.kappa) + ")", *r});
      Emit(c, RenderSvg(s));
      return;
    }
    Json res = {{"kappa", c.kappa}, {"empty", !r.has_value()}};
    res["region"] = r ? ToJson(*r) : Json(nullptr);
    if (r) res["volume"] = Volume(*r);
    EmitJson(c, "region", res);
  });

  // diam
  auto* diam = app.add_subcommand("diam", "private diameter of D(kappa)");
  AddCommon(diam, c);
  diam->callback([&] {
    PointSet p = c.Points();
    std::optional<uint64_t> used;
    NoiseSource n = c.Noise("diam", &used);
    EstimateReport r = DpDiameter(RegionModel::FromPoints(p), c.Params(), n);
    Json res = {{"estimate", ToJson(r)}};
    res["seed"] = used ? Json(*used) : Json(nullptr);
    EmitJson(c, "diam", res);
  });

  // width
  double d_upper = 0.0, b_lower = 0.0;
  auto* width = app.add_subcommand("width", "private width of D(kappa)");
  AddCommon(width, c);
  width->add_option("--d-upper", d_upper, "diameter upper bound (default sqrt(d))");
  width->add_option("--b-lower", b_lower, "width lower bound (default 2^-grid_exp)");
  width->callback([&] {
    PointSet p = c.Points();
    std::optional<uint64_t> used;
    NoiseSource n = c.Noise("width", &used);
    double du = d_upper > 0 ? d_upper : std::sqrt(static_cast<double>(p.dim));
    double bl = b_lower > 0 ? b_lower : std::ldexp(1.0, -p.grid_exp);
    EstimateReport r = DpWidth(RegionModel::FromPoints(p), c.Params(), du, bl, n);
    Json res = {{"estimate", ToJson(r)}, {"d_upper", du}, {"b_lower", bl}};
    res["seed"] = used ? Json(*used) : Json(nullptr);
    EmitJson(c, "width", res);
  });

  // bbox
  bool nonprivate = false;
  double gamma = 1.0;
  auto* bbox = app.add_subcommand("bbox", "private oriented bounding box of D(kappa)");
  AddCommon(bbox, c);
  bbox->add_flag("--nonprivate", nonprivate, "recursive box of the hull (exact, non-private)");
  bbox->add_option("--gamma", gamma, "diameter slack for --nonprivate")->capture_default_str();
  bbox->callback([&] {
    PointSet p = c.Points();
    Json res;
    OrientedBox box;
    if (nonprivate) {
      box = BboxNonPrivate(p.points, gamma);
      c.no_noise = true;
      res = {{"box", ToJson(box)}};
    } else {
      std::optional<uint64_t> used;
      NoiseSource n = c.Noise("bbox", &used);
      BoxEstimate b = BboxPrivate(RegionModel::FromPoints(p), c.Params(), n);
      box = b.box;
      res = {{"box", ToJson(b.box)}, {"report", ToJson(b.report)}};
      res["seed"] = used ? Json(*used) : Json(nullptr);
    }
    if (WantSvg(c)) {
      SvgScene s;
      s.points = p.points;
      if (auto r = TukeyRegion(p, c.kappa)) s.regions.push_back({"D(kappa)", *r});
      s.box = box;
      Emit(c, RenderSvg(s));
      return;
    }
    EmitJson(c, "bbox", res);
  });

  // kernel
  std::string method = "select";
  double c_d = 0.0;
  auto* kernel = app.add_subcommand("kernel", "private kernel of D(kappa)");
  AddCommon(kernel, c);
  kernel->add_option("--method", method, "fat | absfat | select")->capture_default_str();
  kernel->add_option("--c-d", c_d, "fatness ratio (fat, absfat)");
  kernel->callback([&] {
    PointSet p = c.Points();
    RegionModel m = RegionModel::FromPoints(p);
    DPParams prm = c.Params();
    std::optional<uint64_t> used;
    NoiseSource n = c.Noise("kernel", &used);
    Json res;
    KernelResult k;
    if (method == "absfat") {
      k = KernelAbsFat(m, prm, c_d > 0 ? c_d : AbsoluteFatConstant(p.dim), n);
    } else if (method == "fat" || method == "select") {
      double cc = c_d;
      if (method == "select") {
        FatnessSelectResult fs = FatnessSelect(m, prm, n);
        res["fatness_budget"] = ToJson(fs.budget);
        res["fatness_index"] = fs.choice ? Json(fs.choice->index) : Json(nullptr);
        if (fs.choice) cc = fs.choice->c;
      }
      if (cc <= 0) cc = RelativeFatConstant(p.dim);
      res["c_d"] = cc;
      k = KernelFat(m, prm, cc, n);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "--method must be fat, absfat or select");
    }
    const int outer = c.no_noise ? prm.kappa
                                 : std::max(1, prm.kappa - static_cast<int>(std::ceil(k.gamma_kernel)));
    if (m.chain.Has(prm.kappa) && !k.points.empty())
      k.certification = KernelCertify(k.points, m.chain.At(prm.kappa), m.chain.At(outer), prm.alpha);
    res["outer_kappa"] = outer;
    if (WantSvg(c)) {
      SvgScene s;
      s.points = p.points;
      if (m.chain.Has(prm.kappa)) s.regions.push_back({"D(kappa)", m.chain.At(prm.kappa)});
      s.kernel = k.points;
      s.base = k.base;
      Emit(c, RenderSvg(s));
      return;
    }
    res["kernel"] = ToJson(k);
    res["measures"] = ToJson(AppliedMeasures(k.points, p.dim));
    res["seed"] = used ? Json(*used) : Json(nullptr);
    EmitJson(c, "kernel", res);
  });

  // select-kappa
  int m_opt = 0;
  auto* sel = app.add_subcommand("select-kappa", "private choice of a volume-stable depth");
  AddCommon(sel, c);
  sel->add_option("--m", m_opt, "index range (default n / (2(d+1)))");
  sel->callback([&] {
    PointSet p = c.Points();
    int m = m_opt > 0 ? m_opt : static_cast<int>(p.size()) / (2 * (p.dim + 1));
    KappaQueryTable t = KappaQueryTable::FromPoints(p, m);
    std::optional<uint64_t> used;
    NoiseSource n = c.Noise("select-kappa", &used);
    KappaSelection s = ShiftedExpMechanism(t, c.epsilon, n);
    Json res = {{"m", m},          {"output", s.output},   {"clamped", s.clamped},
                {"out_of_range", s.out_of_range}, {"q_max", s.q_max}, {"budget", ToJson(s.budget)}};
    res["seed"] = used ? Json(*used) : Json(nullptr);
    EmitJson(c, "select-kappa", res);
  });

  // pipeline
  RunConfig rc;
  bool no_probe = false, no_select = false;
  auto* pipe = app.add_subcommand("pipeline", "end-to-end private kernel release");
  AddCommon(pipe, c);
  pipe->add_flag("--no-absfat-probe", no_probe, "skip the absolute-fatness probe");
  pipe->add_flag("--no-fatness-select", no_select, "use the worst-case ratio instead of selecting one");
  pipe->add_option("--c-d", rc.c_d, "fix the kernel ratio");
  pipe->add_option("--m", rc.m_override, "replace the prescribed m (still capped)");
  pipe->add_option("--cell-cap", rc.cell_cap, "grid kernel cell cap")->capture_default_str();
  pipe->add_flag("--timings", rc.record_timings, "record per-stage timings (output no longer byte-stable)");
  pipe->callback([&] {
    PointSet p = c.Points();
    rc.epsilon = c.epsilon;
    rc.delta = c.delta;
    rc.alpha = c.alpha;
    rc.beta = c.beta;
    rc.grid_exp = c.grid_exp;
    rc.absfat_probe = !no_probe;
    rc.select_fatness = !no_select;
    if (!c.no_noise) rc.seed = c.Seed();
    PipelineReport r = RunPipeline(p, rc);
    if (WantSvg(c)) {
      if (p.dim != 2) throw Error(ErrorCode::kUnsupportedDimension, "SVG needs d = 2; use --format json");
      RegionModel m = RegionModel::FromPoints(p);
      SvgScene s;
      s.points = p.points;
      if (m.chain.Has(r.chosen_kappa)) s.regions.push_back({"D(kappa)", m.chain.At(r.chosen_kappa)});
      if (m.chain.Has(r.outer_kappa) && r.outer_kappa != r.chosen_kappa)
        s.regions.push_back({"D(kappa - Delta)", m.chain.At(r.outer_kappa)});
      s.kernel = r.kernel.points;
      s.base = r.kernel.base;
      s.box = r.box;
      Emit(c, RenderSvg(s));
      return;
    }
    EmitJson(c, "pipeline", ToJson(r));
  });

  // gen
  std::string family = "uniform";
  int n_pts = 100;
  auto* gen = app.add_subcommand("gen", "synthetic grid-aligned point sets");
  AddCommon(gen, c);
  gen->add_option("--family", family, "uniform | gaussian-clipped | ring | volatile-depth")->capture_default_str();
  gen->add_option("--n", n_pts, "number of points")->capture_default_str();
  gen->callback([&] {
    int d = c.dim > 0 ? c.dim : 2;
    SyntheticSet s = GenerateSynthetic(ParseSyntheticFamily(family), n_pts, d, c.seed.value_or(0), c.grid_exp);
    if (c.format == "csv") {
      Emit(c, PointsToCsv(s.points));
    } else if (c.format == "json") {
      Emit(c, PointsToJson(s.points));
    } else {
      throw Error(ErrorCode::kInvalidArgument, "gen writes csv or json");
    }
  });

  // audit
  std::vector<std::string> adds;
  int audit_m = 20;
  auto* audit = app.add_subcommand("audit", "sensitivity audit of the kappa score and the selector's exact privacy ratio");
  AddCommon(audit, c);
  audit->add_option("--add", adds, "neighbouring point x1,x2,... (repeatable)")->required();
  audit->add_option("--m", audit_m, "index range")->capture_default_str();
  audit->callback([&] {
    PointSet p = c.Points();
    Json rows = Json::array();
    const int64_t w = ShiftedExpWindow(c.epsilon);
    for (const std::string& a : adds) {
      Vec x = ParseVec(a);
      QAudit q = QSensitivityAudit(p, x, audit_m);
      std::vector<double> pa = ShiftedExpPmf(KappaQueryTable::FromPoints(p, audit_m).q, c.epsilon, 1 - w, audit_m + w);
      std::vector<double> pb =
          ShiftedExpPmf(KappaQueryTable::FromPoints(p.With(x), audit_m).q, c.epsilon, 1 - w, audit_m + w);
      double worst = 0.0;
      for (size_t j = 0; j < pa.size(); ++j)
        worst = std::max({worst, std::log(pa[j] / pb[j]), std::log(pb[j] / pa[j])});
      rows.push_back({{"point", ToJson(x)},
                      {"max_q_difference", q.max_diff},
                      {"worst_kappa", q.worst_kappa},
                      {"q_max", q.q_max},
                      {"max_log_ratio", worst},
                      {"ratio_within_epsilon", worst <= c.epsilon + 1e-9}});
    }
    c.no_noise = true;
    EmitJson(c, "audit", {{"m", audit_m}, {"epsilon", c.epsilon}, {"neighbours", rows}});
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc_parse = app.exit(e);
    return rc_parse == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCode(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
