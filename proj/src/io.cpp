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

#include "tukeydp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace tdp {

namespace {

std::string Trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool ParseDouble(const std::string& field, double& out) {
  std::string t = Trim(field);
  if (t.empty()) return false;
  const char* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ';' || c == '\t') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

PointSet Finish(std::vector<Vec> rows, int dim, int grid_exp) {
  if (rows.empty()) throw Error(ErrorCode::kParseError, "no data rows");
  if (dim > 0 && static_cast<int>(rows[0].size()) != dim)
    throw Error(ErrorCode::kParseError, "expected " + std::to_string(dim) + " columns, found " +
                                            std::to_string(rows[0].size()));
  return PointSet::Make(std::move(rows), grid_exp);
}

void CheckGridExp(int grid_exp) {
  if (grid_exp < 1 || grid_exp > 32)
    throw Error(ErrorCode::kInvalidArgument, "grid exponent must lie in [1, 32]");
}

}  // namespace

PointSet ParsePointsCsv(const std::string& text, int dim, int grid_exp) {
  CheckGridExp(grid_exp);
  std::istringstream in(text);
  std::string line;
  std::vector<Vec> rows;
  size_t lineno = 0, width = 0;
  bool seen_data = false, header_done = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (Trim(line).empty() || Trim(line)[0] == '#') continue;
    std::vector<std::string> f = SplitFields(line);
    Vec row;
    bool numeric = true;
    for (const std::string& s : f) {
      double v;
      if (!ParseDouble(s, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (!seen_data && !header_done) {
        header_done = true;  // one optional header line
        continue;
      }
      throw Error(ErrorCode::kParseError, "non-numeric field on line " + std::to_string(lineno));
    }
    if (!seen_data) width = row.size();
    seen_data = header_done = true;
    if (row.size() != width)
      throw Error(ErrorCode::kParseError, "line " + std::to_string(lineno) + " has " +
                                              std::to_string(row.size()) + " columns, expected " +
                                              std::to_string(width));
    rows.push_back(std::move(row));
  }
  return Finish(std::move(rows), dim, grid_exp);
}

PointSet ParsePointsJson(const std::string& text, int dim, int grid_exp) {
  CheckGridExp(grid_exp);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("invalid JSON: ") + e.what());
  }
  // Either a bare array or a {"points": [...]} object.
  if (j.is_object() && j.contains("points")) j = j["points"];
  if (!j.is_array()) throw Error(ErrorCode::kParseError, "expected an array of points");
  std::vector<Vec> rows;
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array()) throw Error(ErrorCode::kParseError, "row " + std::to_string(i) + " is not an array");
    Vec row;
    for (const auto& v : j[i]) {
      if (!v.is_number())
        throw Error(ErrorCode::kParseError, "row " + std::to_string(i) + " has a non-numeric entry");
      row.push_back(v.get<double>());
    }
    if (!rows.empty() && row.size() != rows[0].size())
      throw Error(ErrorCode::kParseError, "row " + std::to_string(i) + " has the wrong length");
    rows.push_back(std::move(row));
  }
  return Finish(std::move(rows), dim, grid_exp);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIOError, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIOError, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::kIOError, "write failed for " + path);
}

PointSet LoadPoints(const std::string& path, int dim, int grid_exp) {
  std::string text = ReadTextFile(path);
  bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  std::string t = Trim(text);
  if (!t.empty() && (t[0] == '[' || t[0] == '{')) json = true;
  return json ? ParsePointsJson(text, dim, grid_exp) : ParsePointsCsv(text, dim, grid_exp);
}

std::string PointsToCsv(const PointSet& p) {
  std::ostringstream os;
  os.precision(17);
  for (const Vec& x : p.points) {
    for (size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
    os << '\n';
  }
  return os.str();
}

std::string PointsToJson(const PointSet& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const Vec& x : p.points) j.push_back(x);
  return j.dump() + "\n";
}

SyntheticFamily ParseSyntheticFamily(const std::string& name) {
  if (name == "uniform") return SyntheticFamily::kUniform;
  if (name == "gaussian-clipped") return SyntheticFamily::kGaussianClipped;
  if (name == "ring") return SyntheticFamily::kRing;
  if (name == "volatile-depth") return SyntheticFamily::kVolatileDepth;
  throw Error(ErrorCode::kInvalidArgument, "unknown family '" + name + "'");
}

const char* SyntheticFamilyName(SyntheticFamily f) {
  switch (f) {
    case SyntheticFamily::kUniform: return "uniform";
    case SyntheticFamily::kGaussianClipped: return "gaussian-clipped";
    case SyntheticFamily::kRing: return "ring";
    case SyntheticFamily::kVolatileDepth: return "volatile-depth";
  }
  return "?";
}

SyntheticSet GenerateSynthetic(SyntheticFamily family, int n, int dim, uint64_t seed, int grid_exp) {
  CheckGridExp(grid_exp);
  if (dim < 1 || dim > 3) throw Error(ErrorCode::kUnsupportedDimension, "synthetic sets need d in 1..3");
  if (n < dim + 1) throw Error(ErrorCode::kInvalidArgument, "need n >= d+1 points");
  std::mt19937_64 g(seed);
  const double cells = std::ldexp(1.0, grid_exp);
  auto snap = [&](double x) { return std::round(std::clamp(x, 0.0, 1.0) * cells) / cells; };
  std::uniform_int_distribution<int64_t> cell(0, static_cast<int64_t>(cells));
  std::normal_distribution<double> normal(0.0, 1.0);

  SyntheticSet out;
  std::vector<Vec> pts;
  switch (family) {
    case SyntheticFamily::kUniform:
      for (int i = 0; i < n; ++i) {
        Vec x(dim);
        for (double& c : x) c = cell(g) / cells;
        pts.push_back(x);
      }
      break;
    case SyntheticFamily::kGaussianClipped:
      for (int i = 0; i < n; ++i) {
        Vec x(dim);
        for (double& c : x) c = snap(0.5 + 0.15 * normal(g));
        pts.push_back(x);
      }
      break;
    case SyntheticFamily::kRing:
      for (int i = 0; i < n; ++i) {
        Vec u(dim);
        for (double& c : u) c = normal(g);
        if (Norm(u) < 1e-12) u[0] = 1.0;
        u = Normalized(u);
        double r = 0.35 + 0.02 * normal(g);
        Vec x(dim);
        for (int k = 0; k < dim; ++k) x[k] = snap(0.5 + r * u[k]);
        pts.push_back(x);
      }
      break;
    case SyntheticFamily::kVolatileDepth: {
      // Most points on the hyperplane x_d = 1/2 and a small cap of k points
      // above it. Points strictly above the hyperplane have depth at most
      // the cap size, so dropping one cap point flattens D(k).
      if (dim < 2) throw Error(ErrorCode::kUnsupportedDimension, "volatile-depth needs d >= 2");
      const int k = std::max(2, n / 8);
      if (n < 3 * k) throw Error(ErrorCode::kInvalidArgument, "volatile-depth needs n >= 6");
      std::uniform_real_distribution<double> flat(0.125, 0.875), jitter(-0.0625, 0.0625);
      for (int i = 0; i < k; ++i) {
        Vec x(dim);
        for (int c = 0; c + 1 < dim; ++c) x[c] = snap(0.5 + jitter(g));
        x[dim - 1] = snap(0.875 + jitter(g) / 2);
        pts.push_back(x);
      }
      for (int i = k; i < n; ++i) {
        Vec x(dim);
        for (int c = 0; c + 1 < dim; ++c) x[c] = snap(flat(g));
        x[dim - 1] = 0.5;
        pts.push_back(x);
      }
      out.pivot = 0;
      out.pivot_kappa = k;
      break;
    }
  }
  out.points = PointSet::Make(std::move(pts), grid_exp);
  return out;
}

}  // namespace tdp
