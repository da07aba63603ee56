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

#include "tukeydp/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tdp {

namespace {

// Infinite diagnostics become null rather than invalid JSON.
Json Num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json ToJson(const Vec& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(Num(x));
  return a;
}

Json ToJson(const PrivacyBudget& b) {
  Json entries = Json::array();
  for (const BudgetEntry& e : b.entries())
    entries.push_back({{"mechanism", e.mechanism},
                       {"epsilon", e.epsilon},
                       {"delta", e.delta},
                       {"count", e.count},
                       {"total_epsilon", e.total_epsilon},
                       {"total_delta", e.total_delta},
                       {"advanced", e.advanced}});
  return {{"entries", entries}, {"epsilon", b.epsilon_spent()}, {"delta", b.delta_spent()}};
}

Json ToJson(const EstimateReport& r) {
  Json terms = Json::object();
  for (const auto& [k, v] : r.terms) terms[k] = Num(v);
  return {{"value", Num(r.value)},
          {"delta_depth", Num(r.delta_depth)},
          {"halted", r.halted},
          {"halt_index", r.halt_index},
          {"terms", terms},
          {"budget", ToJson(r.budget)}};
}

Json ToJson(const Polytope& p) {
  Json verts = Json::array(), facets = Json::array();
  for (const Vec& v : p.vertices) verts.push_back(ToJson(v));
  for (const Halfspace& h : p.facets) facets.push_back({{"normal", ToJson(h.normal)}, {"offset", Num(h.offset)}});
  return {{"dim", p.dim}, {"affine_dim", p.affine_dim}, {"vertices", verts}, {"facets", facets}};
}

Json ToJson(const OrientedBox& b) {
  Json axes = Json::array(), iv = Json::array(), deg = Json::array();
  for (const Vec& a : b.axes) axes.push_back(ToJson(a));
  for (const auto& [lo, hi] : b.intervals) iv.push_back({Num(lo), Num(hi)});
  for (bool x : b.degenerate) deg.push_back(x);
  return {{"axes", axes}, {"intervals", iv}, {"degenerate", deg}, {"volume", Num(b.Volume())}};
}

Json ToJson(const FatteningTransform& t) {
  Json axes = Json::array();
  for (const Vec& a : t.axes) axes.push_back(ToJson(a));
  return {{"axes", axes},
          {"lo", ToJson(t.lo)},
          {"scale", ToJson(t.scale)},
          {"clamped", t.clamped},
          {"determinant", Num(t.Determinant())}};
}

Json ToJson(const KernelCertification& c) {
  return {{"inner_ok", c.inner_ok},
          {"outer_ok", c.outer_ok},
          {"alpha_inner", Num(c.alpha_inner)},
          {"alpha_outer", Num(c.alpha_outer)},
          {"alpha_prime", Num(c.alpha_prime())},
          {"inner_shift", ToJson(c.inner_shift)},
          {"outer_shift", ToJson(c.outer_shift)},
          {"inner_witness", ToJson(c.inner_witness)},
          {"outer_witness", ToJson(c.outer_witness)},
          {"snap_distance", Num(c.snap_distance)}};
}

Json ToJson(const KernelResult& k) {
  Json pts = Json::array();
  for (const Vec& p : k.points) pts.push_back(ToJson(p));
  Json j = {{"kappa", k.kappa},
            {"points", pts},
            {"alpha", Num(k.alpha)},
            {"gamma_kernel", Num(k.gamma_kernel)},
            {"report", ToJson(k.report)}};
  j["base"] = k.base ? ToJson(*k.base) : Json(nullptr);
  j["certification"] = k.certification ? ToJson(*k.certification) : Json(nullptr);
  return j;
}

Json ToJson(const MeasureSet& m) {
  return {{"diameter", Num(m.diameter)},
          {"width", Num(m.width)},
          {"volume", Num(m.volume)},
          {"ball_radius", Num(m.ball_radius)}};
}

Json ToJson(const PipelineReport& r) {
  const RunConfig& c = r.config;
  Json cfg = {{"epsilon", c.epsilon},
              {"delta", c.delta},
              {"alpha", c.alpha},
              {"beta", c.beta},
              {"grid_exp", c.grid_exp},
              {"absfat_probe", c.absfat_probe},
              {"select_fatness", c.select_fatness},
              {"c_d", c.c_d},
              {"m_override", c.m_override},
              {"cell_cap", c.cell_cap}};
  cfg["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);

  Json stages = Json::array();
  for (const StageRecord& s : r.stages) {
    Json js = {{"name", s.name}, {"status", s.status}, {"notes", s.notes}, {"budget", ToJson(s.budget)}};
    if (c.record_timings) js["millis"] = s.millis;
    stages.push_back(js);
  }
  Json j = {{"dim", r.dim},
            {"n", r.n},
            {"noise_disabled", r.noise_disabled},
            {"config", cfg},
            {"stages", stages},
            {"budget_total", {{"epsilon", r.total_epsilon()}, {"delta", r.total_delta()}, {"composition", "basic"}}},
            {"preprocess",
             {{"noisy_count", Num(r.noisy_count)}, {"affine_rank", r.affine_rank}, {"rank_check_private", false}}},
            {"constants",
             {{"m_formula", kMFormula},
              {"delta_kernel", Num(r.delta_kernel)},
              {"m_prescribed", r.m_prescribed},
              {"m_cap", r.m_cap},
              {"m", r.m},
              {"relative_fat_constant", RelativeFatConstant(r.dim)},
              {"absolute_fat_constant", AbsoluteFatConstant(r.dim)},
              {"qc_constant", kQcConstant}}},
            {"selection", {{"kappa_raw", r.kappa_raw}, {"chosen_kappa", r.chosen_kappa}, {"q_max", r.q_max}}},
            {"absfat", r.absfat},
            {"kernel_c", Num(r.kernel_c)},
            {"kernel", ToJson(r.kernel)},
            {"outer_kappa", r.outer_kappa},
            {"measures", ToJson(r.measures)},
            {"warnings", r.warnings}};
  j["box"] = r.box ? ToJson(*r.box) : Json(nullptr);
  j["transform"] = r.transform ? ToJson(*r.transform) : Json(nullptr);
  j["fatness_index"] = r.fatness_index ? Json(*r.fatness_index) : Json(nullptr);
  return j;
}

Json Envelope(const std::string& command, Json result) {
  return {{"schema_version", kReportSchemaVersion}, {"command", command}, {"result", std::move(result)}};
}

std::string Dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

// Vertices of a planar convex body in angular order.
std::vector<Vec> Ordered(const std::vector<Vec>& pts) {
  if (pts.size() < 3) return pts;
  Vec c(2, 0.0);
  for (const Vec& p : pts) c = Add(c, p);
  c = Scale(c, 1.0 / static_cast<double>(pts.size()));
  std::vector<Vec> out = pts;
  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  return out;
}

}  // namespace

std::string RenderSvg(const SvgScene& s) {
  for (const Vec& p : s.points)
    if (p.size() != 2) throw Error(ErrorCode::kUnsupportedDimension, "SVG scenes are 2-D only");
  // Data frame [0,1]^2 with margin, y up.
  const double size = 600, pad = 0.1;
  auto X = [&](double x) { return (x + pad) / (1 + 2 * pad) * size; };
  auto Y = [&](double y) { return size - (y + pad) / (1 + 2 * pad) * size; };
  std::ostringstream os;
  os.precision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
  os << "<rect x=\"" << X(0) << "\" y=\"" << Y(1) << "\" width=\"" << X(1) - X(0) << "\" height=\""
     << Y(0) - Y(1) << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
  auto path = [&](const std::vector<Vec>& poly, const std::string& cls, const std::string& stroke,
                  const std::string& fill) {
    if (poly.empty()) return;
    std::vector<Vec> v = Ordered(poly);
    os << "<path class=\"" << cls << "\" d=\"";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? " L " : "M ") << X(v[i][0]) << ' ' << Y(v[i][1]);
    os << " Z\" fill=\"" << fill << "\" stroke=\"" << stroke << "\"/>\n";
  };
  const char* palette[] = {"#1f77b4", "#ff7f0e", "#9467bd", "#8c564b"};
  for (size_t i = 0; i < s.regions.size(); ++i) {
    os << "<!-- " << s.regions[i].first << " -->\n";
    path(s.regions[i].second.vertices, "region", palette[i % 4], "none");
  }
  if (s.box) path(s.box->Corners(), "box", "#d62728", "none");
  if (!s.kernel.empty()) {
    Polytope h = HullAny(s.kernel, 2);
    path(h.vertices, "kernel", "#2ca02c", "rgba(44,160,44,0.15)");
  }
  for (const Vec& p : s.points)
    os << "<circle class=\"point\" cx=\"" << X(p[0]) << "\" cy=\"" << Y(p[1]) << "\" r=\"2.5\" fill=\"#333\"/>\n";
  if (s.base)
    os << "<circle class=\"base\" cx=\"" << X((*s.base)[0]) << "\" cy=\"" << Y((*s.base)[1])
       << "\" r=\"4\" fill=\"#2ca02c\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace tdp
