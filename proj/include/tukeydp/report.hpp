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

// JSON reports (schema in schema/report.schema.json) and 2-D SVG scenes.
// Keys are sorted and numbers printed shortest-round-trip, so equal inputs
// give equal bytes.

#ifndef TUKEYDP_REPORT_HPP_
#define TUKEYDP_REPORT_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tukeydp/bbox.hpp"
#include "tukeydp/dp.hpp"
#include "tukeydp/dp_geometry.hpp"
#include "tukeydp/kernel.hpp"
#include "tukeydp/pipeline.hpp"

namespace tdp {

inline constexpr const char* kReportSchemaVersion = "tukeydp.report/1";

using Json = nlohmann::json;

Json ToJson(const Vec& v);
Json ToJson(const PrivacyBudget& b);
Json ToJson(const EstimateReport& r);
Json ToJson(const Polytope& p);
Json ToJson(const OrientedBox& b);
Json ToJson(const FatteningTransform& t);
Json ToJson(const KernelCertification& c);
Json ToJson(const KernelResult& k);
Json ToJson(const MeasureSet& m);
Json ToJson(const PipelineReport& r);

// {"schema_version", "command", "result"} envelope for any subcommand.
Json Envelope(const std::string& command, Json result);
std::string Dump(const Json& j);  // two-space indent, trailing newline

struct SvgScene {
  std::vector<Vec> points;
  std::vector<std::pair<std::string, Polytope>> regions;  // label, body
  std::vector<Vec> kernel;
  std::optional<OrientedBox> box;
  std::optional<Vec> base;
};

// d = 2 only; UnsupportedDimension otherwise.
std::string RenderSvg(const SvgScene& scene);

}  // namespace tdp

#endif  // TUKEYDP_REPORT_HPP_
