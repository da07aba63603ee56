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

#include "tukeydp/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace tdp {

namespace {

constexpr double kDedupeTol = 1e-10;
constexpr double kRankTol = 1e-9;
constexpr double kVisibleTol = 1e-11;

std::vector<Vec> Dedupe(const std::vector<Vec>& pts) {
  std::vector<Vec> sorted = pts;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Vec> out;
  for (const Vec& p : sorted) {
    bool dup = false;
    // Sorted order groups exact duplicates; near-duplicates need a scan of
    // the recent tail whose first coordinate is still close.
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      if (p[0] - (*it)[0] > kDedupeTol) break;
      double mx = 0;
      for (size_t j = 0; j < p.size(); ++j) mx = std::max(mx, std::abs(p[j] - (*it)[j]));
      if (mx <= kDedupeTol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

struct Frame {
  Vec origin;
  std::vector<Vec> basis;       // spans the affine hull directions
  std::vector<Vec> complement;  // orthonormal completion
};

bool TryAddDirection(std::vector<Vec>& basis, Vec v, double tol) {
  for (const Vec& b : basis) {
    double c = Dot(v, b);
    for (size_t j = 0; j < v.size(); ++j) v[j] -= c * b[j];
  }
  // Second pass for numerical orthogonality.
  for (const Vec& b : basis) {
    double c = Dot(v, b);
    for (size_t j = 0; j < v.size(); ++j) v[j] -= c * b[j];
  }
  double n = Norm(v);
  if (n <= tol) return false;
  basis.push_back(Scale(v, 1.0 / n));
  return true;
}

Frame MakeFrame(const std::vector<Vec>& pts, int dim) {
  Frame f;
  f.origin = pts[0];
  // Greedy farthest-point selection keeps the frame well conditioned.
  std::vector<char> used(pts.size(), 0);
  used[0] = 1;
  while (static_cast<int>(f.basis.size()) < dim) {
    double best = kRankTol;
    int bi = -1;
    for (size_t i = 0; i < pts.size(); ++i) {
      if (used[i]) continue;
      Vec v = Sub(pts[i], f.origin);
      for (const Vec& b : f.basis) {
        double c = Dot(v, b);
        for (int j = 0; j < dim; ++j) v[j] -= c * b[j];
      }
      double n = Norm(v);
      if (n > best) {
        best = n;
        bi = static_cast<int>(i);
      }
    }
    if (bi < 0) break;
    used[bi] = 1;
    TryAddDirection(f.basis, Sub(pts[bi], f.origin), kRankTol);
  }
  std::vector<Vec> all = f.basis;
  for (int j = 0; j < dim && static_cast<int>(all.size()) < dim; ++j) {
    Vec e(dim, 0.0);
    e[j] = 1.0;
    if (TryAddDirection(all, e, 1e-6)) f.complement.push_back(all.back());
  }
  return f;
}

double Cross2(const Vec& o, const Vec& a, const Vec& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; returns indices in counter-clockwise order with
// collinear boundary points removed.
std::vector<int> Hull2DIndices(const std::vector<Vec>& pts) {
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return pts[a] < pts[b]; });
  if (idx.size() < 3) return idx;
  std::vector<int> h(2 * idx.size());
  size_t k = 0;
  for (int i : idx) {
    while (k >= 2 && Cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 1e-13) --k;
    h[k++] = i;
  }
  for (size_t t = idx.size() - 1, lo = k + 1; t-- > 0;) {
    int i = idx[t];
    while (k >= lo && Cross2(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 1e-13) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

struct Tri {
  int a, b, c;
  Vec n;
  double off;
  double area2;  // twice the area
};

Tri MakeTri(const std::vector<Vec>& p, int a, int b, int c) {
  Tri t{a, b, c, {}, 0.0, 0.0};
  Vec n = Cross3(Sub(p[b], p[a]), Sub(p[c], p[a]));
  double len = Norm(n);
  t.area2 = len;
  t.n = len > 0 ? Scale(n, 1.0 / len) : n;
  t.off = Dot(t.n, p[a]);
  return t;
}

// Quickhull on a full-rank point set; outward triangles. Points are taken
// farthest first and only when clearly outside, and the visible region is
// grown from the seed face across edges, so rounding cannot tear the surface.
std::vector<Tri> Hull3DTriangles(const std::vector<Vec>& p) {
  const int n = static_cast<int>(p.size());
  int i0 = 0, i1 = -1, i2 = -1, i3 = -1;
  double best = -1;
  for (int i = 0; i < n; ++i) {
    double d = Distance(p[i], p[i0]);
    if (d > best) best = d, i1 = i;
  }
  const double eps = kVisibleTol * std::max(1.0, best);
  best = -1;
  Vec dir = Normalized(Sub(p[i1], p[i0]));
  for (int i = 0; i < n; ++i) {
    Vec v = Sub(p[i], p[i0]);
    double d = Norm(Sub(v, Scale(dir, Dot(v, dir))));
    if (d > best) best = d, i2 = i;
  }
  best = -1;
  Tri base = MakeTri(p, i0, i1, i2);
  for (int i = 0; i < n; ++i) {
    double d = std::abs(Dot(base.n, p[i]) - base.off);
    if (d > best) best = d, i3 = i;
  }
  Vec inner(3, 0.0);
  for (int i : {i0, i1, i2, i3})
    for (int j = 0; j < 3; ++j) inner[j] += p[i][j] / 4.0;

  std::vector<Tri> faces;
  std::vector<char> alive;
  std::vector<std::vector<int>> outside;
  std::map<std::pair<int, int>, int> edge_face;  // directed edge -> face
  auto dist = [&](int f, int i) { return Dot(faces[f].n, p[i]) - faces[f].off; };
  auto add = [&](Tri t) {
    int id = static_cast<int>(faces.size());
    faces.push_back(std::move(t));
    alive.push_back(1);
    outside.emplace_back();
    const Tri& f = faces.back();
    edge_face[{f.a, f.b}] = id;
    edge_face[{f.b, f.c}] = id;
    edge_face[{f.c, f.a}] = id;
    return id;
  };
  auto assign = [&](int i, const std::vector<int>& cands) {
    int bf = -1;
    double bd = eps;
    for (int f : cands) {
      double d = dist(f, i);
      if (d > bd) bd = d, bf = f;
    }
    if (bf >= 0) outside[bf].push_back(i);
  };
  std::vector<int> seed;
  for (auto [a, b, c] : {std::array<int, 3>{i0, i1, i2}, {i0, i1, i3}, {i0, i2, i3}, {i1, i2, i3}}) {
    Tri t = MakeTri(p, a, b, c);
    if (Dot(t.n, inner) > t.off) t = MakeTri(p, a, c, b);
    seed.push_back(add(std::move(t)));
  }
  for (int i = 0; i < n; ++i)
    if (i != i0 && i != i1 && i != i2 && i != i3) assign(i, seed);

  for (size_t cur = 0; cur < faces.size(); ++cur) {
    while (alive[cur] && !outside[cur].empty()) {
      int apex = outside[cur][0];
      for (int i : outside[cur])
        if (dist(cur, i) > dist(cur, apex)) apex = i;
      // Grow the visible set across shared edges.
      std::vector<int> vis = {static_cast<int>(cur)};
      std::set<int> seen = {static_cast<int>(cur)};
      for (size_t q = 0; q < vis.size(); ++q) {
        const Tri& t = faces[vis[q]];
        for (auto [u, v] : {std::pair{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}) {
          auto it = edge_face.find({v, u});
          if (it == edge_face.end() || seen.count(it->second)) continue;
          seen.insert(it->second);
          if (alive[it->second] && dist(it->second, apex) > 0) vis.push_back(it->second);
        }
      }
      std::set<int> vset(vis.begin(), vis.end());
      std::vector<std::pair<int, int>> horizon;
      std::vector<int> orphans;
      for (int f : vis) {
        const Tri& t = faces[f];
        for (auto [u, v] : {std::pair{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}) {
          auto it = edge_face.find({v, u});
          if (it == edge_face.end() || !vset.count(it->second)) horizon.push_back({u, v});
        }
        for (int i : outside[f])
          if (i != apex) orphans.push_back(i);
        outside[f].clear();
        alive[f] = 0;
      }
      for (int f : vis) {
        const Tri& t = faces[f];
        for (auto e : {std::pair{t.a, t.b}, {t.b, t.c}, {t.c, t.a}}) {
          auto it = edge_face.find(e);
          if (it != edge_face.end() && it->second == f) edge_face.erase(it);
        }
      }
      std::vector<int> fresh;
      for (auto [u, v] : horizon) fresh.push_back(add(MakeTri(p, u, v, apex)));
      for (int i : orphans) assign(i, fresh);
    }
  }
  std::vector<Tri> out;
  for (size_t f = 0; f < faces.size(); ++f)
    if (alive[f]) out.push_back(faces[f]);
  return out;
}

// Merges coplanar triangles into facets and keeps only extreme vertices.
void Finish3D(const std::vector<Vec>& p, const std::vector<Tri>& tris,
              Polytope& out) {
  // Skinny triangles have unreliable normals, so facet planes come from the
  // largest triangles and the rest merge by vertex distance to the plane.
  std::vector<const Tri*> order;
  for (const Tri& t : tris) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const Tri* x, const Tri* y) { return x->area2 > y->area2; });
  std::vector<Halfspace> facets;
  for (const Tri* t : order) {
    if (Norm(t->n) < 0.5) continue;
    bool merged = false;
    for (const Halfspace& h : facets) {
      if (Dot(h.normal, t->n) <= 0) continue;
      bool on = true;
      for (int v : {t->a, t->b, t->c})
        if (std::abs(Dot(h.normal, p[v]) - h.offset) > kCoplanarTol) on = false;
      if (on) {
        merged = true;
        break;
      }
    }
    if (!merged) facets.push_back({t->n, t->off});
  }
  std::set<int> used;
  for (const Tri& t : tris) used.insert({t.a, t.b, t.c});
  std::vector<Vec> verts;
  for (int i : used) {
    std::vector<Vec> normals;
    for (const Halfspace& h : facets)
      if (std::abs(Dot(h.normal, p[i]) - h.offset) <= kCoplanarTol)
        TryAddDirection(normals, h.normal, 1e-6);
    if (normals.size() >= 3) verts.push_back(p[i]);
  }
  out.vertices = std::move(verts);
  out.facets = std::move(facets);
}

Vec Lift(const Frame& f, const Vec& local) {
  Vec g = f.origin;
  for (size_t i = 0; i < local.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) g[j] += local[i] * f.basis[i][j];
  return g;
}

Vec LiftDirection(const Frame& f, const Vec& local) {
  Vec g(f.origin.size(), 0.0);
  for (size_t i = 0; i < local.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j) g[j] += local[i] * f.basis[i][j];
  return g;
}

// Facets of a full-dimensional polytope each vertex is tight on.
std::vector<std::vector<int>> Incidence(const Polytope& p) {
  std::vector<std::vector<int>> inc(p.vertices.size());
  for (size_t v = 0; v < p.vertices.size(); ++v)
    for (size_t f = 0; f < p.facets.size(); ++f)
      if (std::abs(Dot(p.facets[f].normal, p.vertices[v]) - p.facets[f].offset) <=
          kCoplanarTol)
        inc[v].push_back(static_cast<int>(f));
  return inc;
}

std::vector<std::pair<int, int>> Edges3D(const Polytope& p) {
  auto inc = Incidence(p);
  std::vector<std::pair<int, int>> edges;
  for (size_t a = 0; a < inc.size(); ++a) {
    for (size_t b = a + 1; b < inc.size(); ++b) {
      int common = 0;
      for (int f : inc[a])
        if (std::find(inc[b].begin(), inc[b].end(), f) != inc[b].end()) ++common;
      if (common >= 2) edges.push_back({static_cast<int>(a), static_cast<int>(b)});
    }
  }
  return edges;
}

}  // namespace

bool Polytope::Contains(const Vec& x, double tol) const {
  if (IsEmpty()) return false;
  for (const Halfspace& h : facets)
    if (Dot(h.normal, x) > h.offset + tol) return false;
  return true;
}

Polytope HullAny(const std::vector<Vec>& points, int dim) {
  Polytope out;
  out.dim = dim;
  if (points.empty()) return out;
  if (dim > 3)
    throw Error(ErrorCode::kUnsupportedDimension, "hulls are available for d <= 3");
  std::vector<Vec> pts = Dedupe(points);
  Frame fr = MakeFrame(pts, dim);
  const int k = static_cast<int>(fr.basis.size());
  out.affine_dim = k;
  if (k == dim) {
    // Full-dimensional: work in the ambient coordinates directly.
    fr.origin.assign(dim, 0.0);
    fr.basis.clear();
    for (int j = 0; j < dim; ++j) {
      Vec e(dim, 0.0);
      e[j] = 1.0;
      fr.basis.push_back(e);
    }
  }
  std::vector<Vec> local(pts.size(), Vec(k));
  for (size_t i = 0; i < pts.size(); ++i) {
    Vec v = Sub(pts[i], fr.origin);
    for (int b = 0; b < k; ++b) local[i][b] = Dot(v, fr.basis[b]);
  }
  std::vector<Halfspace> lf;  // facets in local coordinates
  if (k == 0) {
    out.vertices = {pts[0]};
  } else if (k == 1) {
    int lo = 0, hi = 0;
    for (size_t i = 0; i < local.size(); ++i) {
      if (local[i][0] < local[lo][0]) lo = static_cast<int>(i);
      if (local[i][0] > local[hi][0]) hi = static_cast<int>(i);
    }
    out.vertices = {pts[lo], pts[hi]};
    lf.push_back({{1.0}, local[hi][0]});
    lf.push_back({{-1.0}, -local[lo][0]});
  } else if (k == 2) {
    std::vector<int> h = Hull2DIndices(local);
    for (size_t i = 0; i < h.size(); ++i) {
      const Vec& a = local[h[i]];
      const Vec& b = local[h[(i + 1) % h.size()]];
      Vec nrm = Normalized(Vec{b[1] - a[1], a[0] - b[0]});
      lf.push_back({nrm, Dot(nrm, a)});
      out.vertices.push_back(pts[h[i]]);
    }
  } else {
    Polytope tmp;
    Finish3D(local, Hull3DTriangles(local), tmp);
    out.vertices = tmp.vertices;
    lf = tmp.facets;
    for (Vec& v : out.vertices) v = Lift(fr, v);
  }
  for (const Halfspace& h : lf) {
    Vec g = LiftDirection(fr, h.normal);
    out.facets.push_back({g, h.offset + Dot(g, fr.origin)});
  }
  for (const Vec& w : fr.complement) {
    double o = Dot(w, fr.origin);
    out.facets.push_back({w, o});
    out.facets.push_back({Scale(w, -1.0), -o});
  }
  return out;
}

Polytope ConvexHull(const std::vector<Vec>& points) {
  if (points.empty()) throw Error(ErrorCode::kDegenerateInput, "no points");
  int d = static_cast<int>(points[0].size());
  Polytope p = HullAny(points, d);
  if (p.affine_dim < d)
    throw Error(ErrorCode::kDegenerateInput,
                "affine rank " + std::to_string(p.affine_dim) + " < " + std::to_string(d));
  return p;
}

Polytope Clip(const Polytope& p, const Halfspace& h) {
  if (p.IsEmpty()) return p;
  const size_t nv = p.vertices.size();
  Vec s(nv);
  double scale = Norm(h.normal);
  double tol = kTol * std::max(1.0, scale);
  double mx = -INFINITY, mn = INFINITY;
  for (size_t i = 0; i < nv; ++i) {
    s[i] = Dot(h.normal, p.vertices[i]) - h.offset;
    mx = std::max(mx, s[i]);
    mn = std::min(mn, s[i]);
  }
  if (mx <= tol) return p;
  Polytope empty;
  empty.dim = p.dim;
  if (mn > tol) return empty;
  std::vector<Vec> pts;
  for (size_t i = 0; i < nv; ++i)
    if (s[i] <= tol) pts.push_back(p.vertices[i]);
  auto cross = [&](size_t a, size_t b) {
    if ((s[a] < -tol && s[b] > tol) || (s[b] < -tol && s[a] > tol)) {
      double t = s[a] / (s[a] - s[b]);
      Vec x(p.dim);
      for (int j = 0; j < p.dim; ++j)
        x[j] = p.vertices[a][j] + t * (p.vertices[b][j] - p.vertices[a][j]);
      pts.push_back(x);
    }
  };
  if (p.IsFullDim() && p.dim == 2) {
    for (size_t i = 0; i < nv; ++i) cross(i, (i + 1) % nv);
  } else if (p.IsFullDim() && p.dim == 3) {
    for (const auto& e : Edges3D(p)) cross(e.first, e.second);
  } else {
    for (size_t a = 0; a < nv; ++a)
      for (size_t b = a + 1; b < nv; ++b) cross(a, b);
  }
  return HullAny(pts, p.dim);
}

std::optional<Polytope> HalfspaceIntersection(
    const std::vector<Halfspace>& constraints, int dim) {
  constexpr double kBig = 1e6;
  std::vector<Vec> corners;
  for (int mask = 0; mask < (1 << dim); ++mask) {
    Vec c(dim);
    for (int j = 0; j < dim; ++j) c[j] = (mask >> j & 1) ? kBig : -kBig;
    corners.push_back(c);
  }
  Polytope p = HullAny(corners, dim);
  for (const Halfspace& h : constraints) {
    double n = Norm(h.normal);
    if (n == 0) {
      if (h.offset < -kTol) return std::nullopt;
      continue;
    }
    p = Clip(p, {Scale(h.normal, 1.0 / n), h.offset / n});
    if (p.IsEmpty()) return std::nullopt;
  }
  for (const Vec& v : p.vertices)
    for (double x : v)
      if (std::abs(x) >= kBig * (1 - 1e-9))
        throw Error(ErrorCode::kUnbounded, "halfspace intersection is unbounded");
  return p;
}

double Volume(const Polytope& p) {
  if (p.dim > 3)
    throw Error(ErrorCode::kUnsupportedDimension, "volume is available for d <= 3");
  if (!p.IsFullDim()) return 0.0;
  if (p.dim == 1) return std::abs(p.vertices[1][0] - p.vertices[0][0]);
  if (p.dim == 2) {
    double a = 0;
    const size_t n = p.vertices.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec& u = p.vertices[i];
      const Vec& v = p.vertices[(i + 1) % n];
      a += u[0] * v[1] - v[0] * u[1];
    }
    return std::abs(a) / 2.0;
  }
  Vec c = VertexCentroid(p);
  double vol = 0;
  for (const Tri& t : Hull3DTriangles(p.vertices)) {
    Vec a = Sub(p.vertices[t.a], c), b = Sub(p.vertices[t.b], c),
        e = Sub(p.vertices[t.c], c);
    vol += std::abs(Dot(a, Cross3(b, e))) / 6.0;
  }
  return vol;
}

DiameterResult DiameterExact(const Polytope& p) {
  DiameterResult r;
  if (p.IsEmpty()) return r;
  r.p = r.q = p.vertices[0];
  for (size_t i = 0; i < p.vertices.size(); ++i)
    for (size_t j = i + 1; j < p.vertices.size(); ++j) {
      double d = Distance(p.vertices[i], p.vertices[j]);
      if (d > r.value) {
        r.value = d;
        r.p = p.vertices[i];
        r.q = p.vertices[j];
      }
    }
  return r;
}

std::pair<double, double> SupportRange(const Polytope& p, const Vec& u) {
  double mn = INFINITY, mx = -INFINITY;
  for (const Vec& v : p.vertices) {
    double x = Dot(v, u);
    mn = std::min(mn, x);
    mx = std::max(mx, x);
  }
  return {mn, mx};
}

double DirectionalSpan(const Polytope& p, const Vec& u) {
  if (p.IsEmpty()) return 0.0;
  auto [mn, mx] = SupportRange(p, u);
  return mx - mn;
}

Vec VertexCentroid(const Polytope& p) {
  Vec c(p.dim, 0.0);
  for (const Vec& v : p.vertices)
    for (int j = 0; j < p.dim; ++j) c[j] += v[j];
  if (!p.vertices.empty()) c = Scale(c, 1.0 / p.vertices.size());
  return c;
}

WidthResult WidthExact(const Polytope& p) {
  WidthResult r;
  r.direction.assign(p.dim, 0.0);
  if (p.dim > 0) r.direction[0] = 1.0;
  if (!p.IsFullDim()) {
    // Lower-dimensional: any complement normal gives width 0.
    for (const Halfspace& h : p.facets) {
      if (DirectionalSpan(p, h.normal) <= kTol) {
        r.direction = Normalized(h.normal);
        break;
      }
    }
    return r;
  }
  std::vector<Vec> cand;
  for (const Halfspace& h : p.facets) cand.push_back(Normalized(h.normal));
  if (p.dim == 3) {
    std::vector<Vec> dirs;
    for (const auto& e : Edges3D(p))
      dirs.push_back(Normalized(Sub(p.vertices[e.second], p.vertices[e.first])));
    for (size_t a = 0; a < dirs.size(); ++a)
      for (size_t b = a + 1; b < dirs.size(); ++b) {
        Vec c = Cross3(dirs[a], dirs[b]);
        if (Norm(c) > 1e-9) cand.push_back(Normalized(c));
      }
  }
  r.value = INFINITY;
  for (const Vec& u : cand) {
    double s = DirectionalSpan(p, u);
    if (s < r.value) {
      r.value = s;
      r.direction = u;
    }
  }
  return r;
}

Vec Rotation::Apply(const Vec& x) const {
  Vec y(dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) y[i] += m[i * dim + j] * x[j];
  return y;
}

Vec Rotation::ApplyInverse(const Vec& y) const {
  Vec x(dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) x[j] += m[i * dim + j] * y[i];
  return x;
}

Vec Rotation::Row(int i) const {
  return Vec(m.begin() + i * dim, m.begin() + (i + 1) * dim);
}

Rotation RotateToAxis(const Vec& v_in) {
  const int d = static_cast<int>(v_in.size());
  Vec v = Normalized(v_in);
  Rotation r;
  r.dim = d;
  r.m.assign(d * d, 0.0);
  for (int i = 0; i < d; ++i) r.m[i * d + i] = 1.0;
  Vec w = v;
  w[0] -= 1.0;
  double ww = Dot(w, w);
  if (ww < 1e-24) return r;
  // Householder H = I - 2 w w^T / |w|^2 swaps v and e_1; negating the last
  // row turns the reflection into a rotation without touching row 1.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r.m[i * d + j] -= 2.0 * w[i] * w[j] / ww;
  if (d >= 2)
    for (int j = 0; j < d; ++j) r.m[(d - 1) * d + j] = -r.m[(d - 1) * d + j];
  return r;
}

Polytope Transform(const Polytope& p, const Rotation& r) {
  Polytope q = p;
  for (Vec& v : q.vertices) v = r.Apply(v);
  for (Halfspace& h : q.facets) h.normal = r.Apply(h.normal);
  return q;
}

Polytope Translate(const Polytope& p, const Vec& shift) {
  Polytope q = p;
  for (Vec& v : q.vertices) v = Add(v, shift);
  for (Halfspace& h : q.facets) h.offset += Dot(h.normal, shift);
  return q;
}

Polytope ScaleAbout(const Polytope& p, const Vec& c, double s) {
  Polytope q = p;
  for (Vec& v : q.vertices) v = Add(c, Scale(Sub(v, c), s));
  for (Halfspace& h : q.facets) h.offset = Dot(h.normal, c) + s * (h.offset - Dot(h.normal, c));
  return q;
}

Polytope ProjectToBasis(const Polytope& p, const std::vector<Vec>& basis) {
  std::vector<Vec> pts;
  for (const Vec& v : p.vertices) {
    Vec y(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) y[i] = Dot(v, basis[i]);
    pts.push_back(y);
  }
  return HullAny(pts, static_cast<int>(basis.size()));
}

size_t AngleCoverSize(double zeta, int dim) {
  double m = std::ceil(M_PI / zeta);
  return static_cast<size_t>(2.0 * std::pow(m, dim - 1));
}

AngleCover MakeAngleCover(double zeta, int dim) {
  if (!(zeta > 0) || dim < 1)
    throw Error(ErrorCode::kInvalidArgument, "angle cover needs zeta > 0");
  AngleCover cov;
  cov.zeta = zeta;
  cov.dim = dim;
  if (dim == 1) {
    cov.directions = {{1.0}, {-1.0}};
    return cov;
  }
  double size = 2.0 * std::pow(std::ceil(M_PI / zeta), dim - 1);
  if (size > static_cast<double>(kMaxCoverSize))
    throw Error(ErrorCode::kCoverTooLarge,
                "angle cover of size " + std::to_string(size) + " exceeds cap");
  const int m = static_cast<int>(std::ceil(M_PI / zeta));
  // Hyperspherical coordinates: d-2 polar angles on cell midpoints of
  // [0, pi] and one azimuth on 2m equally spaced values.
  std::vector<int> idx(dim - 1, 0);
  const double step = M_PI / m;
  while (true) {
    Vec u(dim);
    double sprod = 1.0;
    for (int k = 0; k < dim - 2; ++k) {
      double phi = (idx[k] + 0.5) * step;
      u[k] = sprod * std::cos(phi);
      sprod *= std::sin(phi);
    }
    double theta = idx[dim - 2] * step;
    u[dim - 2] = sprod * std::cos(theta);
    u[dim - 1] = sprod * std::sin(theta);
    // Put the azimuth plane first so that d=2 starts at e_1.
    std::rotate(u.begin(), u.begin() + (dim - 2), u.end());
    cov.directions.push_back(Normalized(u));
    int k = dim - 2;
    while (k >= 0) {
      int lim = (k == dim - 2) ? 2 * m : m;
      if (++idx[k] < lim) break;
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return cov;
}

Ball ChebyshevCenter(const Polytope& p) {
  Ball b;
  if (p.IsEmpty()) return b;
  if (!p.IsFullDim()) {
    b.center = VertexCentroid(p);
    return b;
  }
  const int d = p.dim;
  std::vector<Halfspace> cons;
  for (const Halfspace& h : p.facets) {
    Vec a = h.normal;
    a.push_back(Norm(h.normal));
    cons.push_back({a, h.offset});
  }
  Vec nr(d + 1, 0.0);
  nr[d] = -1.0;
  cons.push_back({nr, 0.0});
  Vec obj(d + 1, 0.0);
  obj[d] = 1.0;
  LpResult r = LpSolve(obj, cons, Sense::kMax);
  b.center = Vec(r.x.begin(), r.x.begin() + d);
  b.radius = r.value;
  return b;
}

namespace {

Ball BallFrom(const std::vector<Vec>& r, int d) {
  Ball b;
  if (r.empty()) {
    b.center.assign(d, 0.0);
    b.radius = -1;
    return b;
  }
  const Vec& o = r[0];
  const int k = static_cast<int>(r.size()) - 1;
  if (k == 0) {
    b.center = o;
    return b;
  }
  // Center o + sum_i lam_i (r_i - o) with 2 (r_i-o).(c-o) = |r_i-o|^2.
  std::vector<Vec> e;
  for (int i = 1; i <= k; ++i) e.push_back(Sub(r[i], o));
  std::vector<double> a(k * k), rhs(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) a[i * k + j] = 2.0 * Dot(e[i], e[j]);
    rhs[i] = Dot(e[i], e[i]);
  }
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int i = c + 1; i < k; ++i)
      if (std::abs(a[i * k + c]) > std::abs(a[piv * k + c])) piv = i;
    if (std::abs(a[piv * k + c]) < 1e-14) {
      // Affinely dependent support: fall back to the farthest pair.
      Ball best;
      best.radius = -1;
      for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = i; j < r.size(); ++j) {
          double rad = Distance(r[i], r[j]) / 2;
          if (rad > best.radius) {
            best.radius = rad;
            best.center = Scale(Add(r[i], r[j]), 0.5);
          }
        }
      return best;
    }
    for (int j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
    std::swap(rhs[c], rhs[piv]);
    for (int i = 0; i < k; ++i) {
      if (i == c) continue;
      double f = a[i * k + c] / a[c * k + c];
      for (int j = 0; j < k; ++j) a[i * k + j] -= f * a[c * k + j];
      rhs[i] -= f * rhs[c];
    }
  }
  b.center = o;
  for (int i = 0; i < k; ++i) {
    double lam = rhs[i] / a[i * k + i];
    for (int j = 0; j < d; ++j) b.center[j] += lam * e[i][j];
  }
  b.radius = 0;
  for (const Vec& q : r) b.radius = std::max(b.radius, Distance(q, b.center));
  return b;
}

Ball Welzl(std::vector<Vec>& pts, size_t n, std::vector<Vec>& r, int d) {
  if (n == 0 || static_cast<int>(r.size()) == d + 1) return BallFrom(r, d);
  Ball b = Welzl(pts, n - 1, r, d);
  if (b.radius >= 0 && Distance(pts[n - 1], b.center) <= b.radius * (1 + 1e-12) + 1e-12)
    return b;
  r.push_back(pts[n - 1]);
  b = Welzl(pts, n - 1, r, d);
  r.pop_back();
  return b;
}

}  // namespace

Ball MinEnclosingBall(const std::vector<Vec>& points) {
  Ball b;
  if (points.empty()) return b;
  const int d = static_cast<int>(points[0].size());
  std::vector<Vec> pts = Dedupe(points);
  std::mt19937_64 g(0x5eedULL);
  std::shuffle(pts.begin(), pts.end(), g);
  std::vector<Vec> r;
  b = Welzl(pts, pts.size(), r, d);
  if (b.radius < 0) b.radius = 0;
  return b;
}

}  // namespace tdp
