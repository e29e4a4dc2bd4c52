#include "minpower/farthest.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "minpower/errors.hpp"

namespace minpower {
namespace {

// ---------------------------------------------------------------------------
// Incremental triangulation of the convex hull (randomized vertex removal,
// reinsertion with legalizing flips). The flip criterion is the reverse of
// the nearest-point one: an edge is illegal when the opposite vertex lies
// strictly OUTSIDE the circumcircle, which drives every circumcircle to
// contain the whole set.
// ---------------------------------------------------------------------------

struct Tri {
  std::array<int, 3> v;   // site indices, CCW
  std::array<int, 3> nb;  // neighbor across edge opposite v[k], -1 = boundary
};

uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
}

class ChewBuilder {
 public:
  ChewBuilder(const PointSet& ps, const std::vector<int>& hull)
      : ps_(ps), hull_(hull) {}

  std::vector<Tri> run() {
    const int m = static_cast<int>(hull_.size());
    std::vector<int> next(m), prev(m);
    for (int i = 0; i < m; ++i) {
      next[i] = (i + 1) % m;
      prev[i] = (i + m - 1) % m;
    }

    // Random removal order down to a base triangle.
    std::mt19937_64 rng(0x5bd1e995u ^ (static_cast<uint64_t>(m) << 17));
    std::vector<int> alive(m);
    std::iota(alive.begin(), alive.end(), 0);
    struct Removed {
      int pos, before, after;
    };
    std::vector<Removed> stack;
    stack.reserve(static_cast<size_t>(m));
    while (static_cast<int>(alive.size()) > 3) {
      const size_t pick = rng() % alive.size();
      const int pos = alive[pick];
      alive[pick] = alive.back();
      alive.pop_back();
      stack.push_back({pos, prev[pos], next[pos]});
      next[prev[pos]] = next[pos];
      prev[next[pos]] = prev[pos];
    }

    // Base triangle from the three survivors, in CCW hull order.
    std::sort(alive.begin(), alive.end());
    add_triangle({site(alive[0]), site(alive[1]), site(alive[2])},
                 {-1, -1, -1});
    refresh_boundary(0);

    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      insert(it->pos, it->before, it->after);

    return std::move(tris_);
  }

 private:
  int site(int pos) const { return hull_[static_cast<size_t>(pos)]; }
  const Point& pt(int s) const { return ps_[s]; }

  int add_triangle(std::array<int, 3> v, std::array<int, 3> nb) {
    tris_.push_back(Tri{v, nb});
    return static_cast<int>(tris_.size()) - 1;
  }

  // Record t as the owner of each of its boundary (nb == -1) edges.
  void refresh_boundary(int t) {
    for (int k = 0; k < 3; ++k) {
      if (tris_[t].nb[k] != -1) continue;
      const int a = tris_[t].v[(k + 1) % 3], b = tris_[t].v[(k + 2) % 3];
      boundary_[edge_key(a, b)] = {t, k};
    }
  }

  void insert(int pos, int before, int after) {
    const int v = site(pos), a = site(before), b = site(after);
    const auto it = boundary_.find(edge_key(a, b));
    const auto [old_t, old_k] = it->second;
    boundary_.erase(it);

    // (a, v, b) consecutive on the CCW hull, so the triangle is CCW.
    const int t = add_triangle({a, v, b}, {-1, old_t, -1});
    tris_[old_t].nb[old_k] = t;
    refresh_boundary(t);

    std::vector<std::array<int, 2>> work{{t, 1}};  // edge opposite v
    while (!work.empty()) {
      const auto [tt, kk] = work.back();
      work.pop_back();
      legalize(tt, kk, work);
    }
  }

  // Checks the edge opposite tris_[t].v[k]; flips if illegal and queues the
  // two edges newly opposite the apex.
  void legalize(int t, int k, std::vector<std::array<int, 2>>& work) {
    const int s = tris_[t].nb[k];
    if (s == -1) return;
    int l = 0;
    while (tris_[s].nb[l] != t) ++l;

    const int p = tris_[t].v[k];
    const int A = tris_[t].v[(k + 1) % 3];
    const int B = tris_[t].v[(k + 2) % 3];
    const int q = tris_[s].v[l];

    // Legal when q is inside or on the circumcircle of t.
    if (incircle(pt(tris_[t].v[0]), pt(tris_[t].v[1]), pt(tris_[t].v[2]),
                 pt(q)) >= 0)
      return;

    const int nAq = tris_[s].nb[(l + 1) % 3];
    const int nQB = tris_[s].nb[(l + 2) % 3];
    const int nBp = tris_[t].nb[(k + 1) % 3];
    const int npA = tris_[t].nb[(k + 2) % 3];

    tris_[t] = Tri{{p, A, q}, {nAq, s, npA}};
    tris_[s] = Tri{{p, q, B}, {nQB, nBp, t}};

    if (nAq != -1) {
      for (int j = 0; j < 3; ++j)
        if (tris_[nAq].nb[j] == s) tris_[nAq].nb[j] = t;
    }
    if (nBp != -1) {
      for (int j = 0; j < 3; ++j)
        if (tris_[nBp].nb[j] == t) tris_[nBp].nb[j] = s;
    }
    refresh_boundary(t);
    refresh_boundary(s);

    work.push_back({t, 0});
    work.push_back({s, 0});
  }

  const PointSet& ps_;
  const std::vector<int>& hull_;
  std::vector<Tri> tris_;
  std::unordered_map<uint64_t, std::array<int, 2>> boundary_;
};

// ---------------------------------------------------------------------------
// Cocircular canonicalisation. Adjacent triangles with exactly cocircular
// vertex sets are merged into groups; each group polygon is retriangulated
// so that the sorted list of sorted triples is lexicographically smallest.
// That canonical set is built greedily: the triangle on the three smallest
// indices is always feasible in a convex polygon and splits it into
// independent sub-polygons.
// ---------------------------------------------------------------------------

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(static_cast<size_t>(n)) {
    std::iota(p.begin(), p.end(), 0);
  }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

void lexmin_triangulate(const std::vector<int>& poly,
                        std::vector<std::array<int, 3>>& out) {
  const int L = static_cast<int>(poly.size());
  if (L < 3) return;
  // Positions of the three smallest site indices, in cyclic order.
  std::vector<int> pos(static_cast<size_t>(L));
  std::iota(pos.begin(), pos.end(), 0);
  std::partial_sort(pos.begin(), pos.begin() + 3, pos.end(),
                    [&](int i, int j) { return poly[i] < poly[j]; });
  std::array<int, 3> q{pos[0], pos[1], pos[2]};
  std::sort(q.begin(), q.end());
  out.push_back({poly[q[0]], poly[q[1]], poly[q[2]]});
  for (int arc = 0; arc < 3; ++arc) {
    const int s = q[arc], t = q[(arc + 1) % 3];
    std::vector<int> sub;
    for (int i = s; i != t; i = (i + 1) % L) sub.push_back(poly[i]);
    sub.push_back(poly[t]);
    lexmin_triangulate(sub, out);
  }
}

// ---------------------------------------------------------------------------

Point circumcentre(const Point& a, const Point& b, const Point& c) {
  return circumcircle(a, b, c).centre;
}

Fpdt finalize_fpdt(const PointSet& ps, Hull hull, std::vector<Tri> tris) {
  const int T = static_cast<int>(tris.size());

  // Group exactly-cocircular adjacent triangles.
  Dsu dsu(T);
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int s = tris[t].nb[k];
      if (s <= t) continue;
      int l = 0;
      while (tris[s].nb[l] != t) ++l;
      if (incircle(ps[tris[t].v[0]], ps[tris[t].v[1]], ps[tris[t].v[2]],
                   ps[tris[s].v[l]]) == 0)
        dsu.unite(t, s);
    }
  }

  std::map<int, std::vector<int>> classes;
  for (int t = 0; t < T; ++t) classes[dsu.find(t)].push_back(t);

  std::vector<std::pair<std::array<int, 3>, int>> tagged;  // triple, group id
  tagged.reserve(static_cast<size_t>(T));
  std::vector<std::vector<int>> groups;
  std::vector<char> in_group(static_cast<size_t>(T), 0);

  for (auto& [root, members] : classes) {
    if (members.size() == 1) {
      tagged.emplace_back(tris[static_cast<size_t>(members[0])].v, -1);
      continue;
    }
    // Boundary cycle of the group polygon: directed edges of member
    // triangles whose neighbour is outside the group.
    for (int t : members) in_group[static_cast<size_t>(t)] = 1;
    std::unordered_map<int, int> succ;
    for (int t : members) {
      for (int k = 0; k < 3; ++k) {
        const int nb = tris[static_cast<size_t>(t)].nb[k];
        if (nb != -1 && in_group[static_cast<size_t>(nb)]) continue;
        succ[tris[static_cast<size_t>(t)].v[(k + 1) % 3]] =
            tris[static_cast<size_t>(t)].v[(k + 2) % 3];
      }
    }
    for (int t : members) in_group[static_cast<size_t>(t)] = 0;
    std::vector<int> cycle;
    const int start = succ.begin()->first;
    for (int v = start; cycle.empty() || v != start; v = succ[v])
      cycle.push_back(v);

    std::vector<int> sorted_cycle = cycle;
    std::sort(sorted_cycle.begin(), sorted_cycle.end());
    const int gid = static_cast<int>(groups.size());
    groups.push_back(std::move(sorted_cycle));

    std::vector<std::array<int, 3>> sub;
    lexmin_triangulate(cycle, sub);
    for (const auto& tv : sub) tagged.emplace_back(tv, gid);
  }

  // Renumber groups in lexicographic order of their site lists.
  {
    std::vector<int> perm(groups.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int x, int y) {
      return groups[static_cast<size_t>(x)] < groups[static_cast<size_t>(y)];
    });
    std::vector<int> rank(groups.size());
    for (size_t k = 0; k < perm.size(); ++k)
      rank[static_cast<size_t>(perm[k])] = static_cast<int>(k);
    std::vector<std::vector<int>> sorted_groups(groups.size());
    for (size_t g = 0; g < groups.size(); ++g)
      sorted_groups[static_cast<size_t>(rank[g])] = std::move(groups[g]);
    groups = std::move(sorted_groups);
    for (auto& [tv, g] : tagged)
      if (g >= 0) g = rank[static_cast<size_t>(g)];
  }

  // Canonical storage: smallest site first (CCW preserved), list sorted by
  // sorted triple; adjacency rebuilt from scratch.
  for (auto& [tv, g] : tagged) {
    std::array<int, 3> ccw = tv;
    if (orient(ps[ccw[0]], ps[ccw[1]], ps[ccw[2]]) < 0)
      std::swap(ccw[1], ccw[2]);
    int lo = 0;
    for (int k = 1; k < 3; ++k)
      if (ccw[k] < ccw[lo]) lo = k;
    tv = {ccw[lo], ccw[(lo + 1) % 3], ccw[(lo + 2) % 3]};
  }
  std::sort(tagged.begin(), tagged.end(),
            [](const auto& x, const auto& y) {
              auto sx = x.first, sy = y.first;
              std::sort(sx.begin(), sx.end());
              std::sort(sy.begin(), sy.end());
              return sx < sy;
            });

  Fpdt dt;
  dt.hull = std::move(hull);
  dt.triangles.reserve(tagged.size());
  dt.tri_group.reserve(tagged.size());
  for (const auto& [tv, g] : tagged) {
    dt.triangles.push_back(tv);
    dt.tri_group.push_back(g);
  }
  dt.cocircular_groups = std::move(groups);
  dt.neighbors.assign(dt.triangles.size(), {-1, -1, -1});

  std::unordered_map<uint64_t, std::array<int, 2>> edge_owner;  // {tri, slot}
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = dt.triangles[t][(k + 1) % 3];
      const int b = dt.triangles[t][(k + 2) % 3];
      auto [it, fresh] = edge_owner.try_emplace(edge_key(a, b),
                                                std::array<int, 2>{t, k});
      if (!fresh) {
        const auto [t2, k2] = it->second;
        dt.neighbors[t][k] = t2;
        dt.neighbors[t2][k2] = t;
        it->second = {t, k};
      }
    }
  }

  std::map<std::array<int, 2>, std::array<int, 2>> edge_map;  // sites -> tris
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < 3; ++k) {
      int a = dt.triangles[t][(k + 1) % 3], b = dt.triangles[t][(k + 2) % 3];
      if (a > b) std::swap(a, b);
      auto& e = edge_map.try_emplace({a, b}, std::array<int, 2>{-1, -1})
                    .first->second;
      if (e[0] == -1)
        e[0] = t;
      else if (e[0] != t)
        e[1] = t;
    }
  }
  for (auto& [sites, flank] : edge_map) {
    dt.edges.push_back(sites);
    if (flank[1] != -1 && flank[1] < flank[0]) std::swap(flank[0], flank[1]);
    dt.edge_tris.push_back(flank);
  }
  return dt;
}

}  // namespace

Fpdt build_fpdt(const PointSet& ps) {
  Hull hull = convex_hull(ps);
  if (hull.size() < 3)
    throw DegenerateHull("triangulation needs at least 3 hull vertices");
  std::vector<Tri> tris = ChewBuilder(ps, hull.vertices).run();
  return finalize_fpdt(ps, std::move(hull), std::move(tris));
}

namespace {

Fpvd fpvd_from_fpdt(const PointSet& ps, const Fpdt& dt) {
  Fpvd vd;
  vd.hull = dt.hull;
  vd.cocircular_groups = dt.cocircular_groups;
  const int T = dt.size();

  // One vertex per triangle; all triangles of a cocircular group share one
  // circumcentre, computed once from the group's three smallest sites so
  // their positions compare equal.
  std::vector<Point> group_centre(dt.cocircular_groups.size());
  for (size_t g = 0; g < dt.cocircular_groups.size(); ++g) {
    const auto& grp = dt.cocircular_groups[g];
    group_centre[g] = circumcentre(ps[grp[0]], ps[grp[1]], ps[grp[2]]);
  }
  vd.vertices.resize(static_cast<size_t>(T));
  for (int t = 0; t < T; ++t) {
    const auto& tv = dt.triangles[static_cast<size_t>(t)];
    const int g = dt.tri_group[static_cast<size_t>(t)];
    vd.vertices[static_cast<size_t>(t)] = FpvdVertex{
        g >= 0 ? group_centre[static_cast<size_t>(g)]
               : circumcentre(ps[tv[0]], ps[tv[1]], ps[tv[2]]),
        tv, g};
  }

  // Directed hull edges, for orienting the unbounded diagram edges.
  std::unordered_map<uint64_t, std::array<int, 2>> hull_dir;
  {
    const int m = dt.hull.size();
    for (int k = 0; k < m; ++k) {
      const int a = dt.hull.vertices[static_cast<size_t>(k)];
      const int b = dt.hull.vertices[static_cast<size_t>((k + 1) % m)];
      hull_dir[edge_key(a, b)] = {a, b};
    }
  }

  // One diagram edge per triangulation edge, index-aligned.
  const int E = static_cast<int>(dt.edges.size());
  vd.edges.resize(static_cast<size_t>(E));
  for (int e = 0; e < E; ++e) {
    const auto [i, j] = dt.edges[static_cast<size_t>(e)];
    const auto [t0, t1] = dt.edge_tris[static_cast<size_t>(e)];
    FpvdEdge edge;
    edge.sites = {i, j};
    if (t1 != -1) {
      edge.verts = {t0, t1};
      edge.a = vd.vertices[static_cast<size_t>(t0)].pos;
      edge.b_or_dir = vd.vertices[static_cast<size_t>(t1)].pos;
      edge.unbounded = false;
    } else {
      // Hull edge: the dual is a ray from the flanking circumcentre. In the
      // farthest-point diagram the cell of a site lies on the far side, so
      // for the CCW hull edge (u, v) the ray leaves along (v-u) rotated a
      // quarter turn counter-clockwise, i.e. away from the polygon.
      const auto [u, v] = hull_dir.at(edge_key(i, j));
      Point d = rot90(ps[v] - ps[u]);
      d = (1.0 / norm(d)) * d;
      edge.verts = {t0, -1};
      edge.a = vd.vertices[static_cast<size_t>(t0)].pos;
      edge.b_or_dir = d;
      edge.unbounded = true;
    }
    vd.edges[static_cast<size_t>(e)] = edge;
  }

  // Regions: for each hull site, the incident triangulation edges in fan
  // order, starting from the hull edge to the previous hull vertex.
  std::map<std::array<int, 2>, int> edge_id;
  for (int e = 0; e < E; ++e) edge_id[dt.edges[static_cast<size_t>(e)]] = e;
  auto eid = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return edge_id.at({a, b});
  };

  const int m = dt.hull.size();
  vd.region_of.assign(static_cast<size_t>(ps.size()), -1);
  vd.regions.resize(static_cast<size_t>(m));

  // Triangle touching each directed hull edge.
  std::map<std::array<int, 2>, int> hull_edge_tri;
  for (int e = 0; e < E; ++e) {
    if (dt.edge_tris[static_cast<size_t>(e)][1] == -1)
      hull_edge_tri[dt.edges[static_cast<size_t>(e)]] =
          dt.edge_tris[static_cast<size_t>(e)][0];
  }

  for (int k = 0; k < m; ++k) {
    const int h = dt.hull.vertices[static_cast<size_t>(k)];
    const int hp = dt.hull.vertices[static_cast<size_t>((k + m - 1) % m)];
    const int hn = dt.hull.vertices[static_cast<size_t>((k + 1) % m)];

    FpvdRegion region;
    region.site = h;
    region.edge_ids.push_back(eid(hp, h));
    region.neighbor_sites.push_back(hp);

    // Walk the triangle fan around h from edge (hp, h) to edge (h, hn).
    int a = hp, b = h;
    if (a > b) std::swap(a, b);
    int t = hull_edge_tri.at({a, b});
    int other = hp;
    while (true) {
      // In triangle t, step across the edge (h, other') where other' is the
      // third vertex; the fan ends at the hull edge (h, hn).
      const auto& tv = dt.triangles[static_cast<size_t>(t)];
      int third = -1;
      for (int c : tv)
        if (c != h && c != other) third = c;
      region.edge_ids.push_back(eid(h, third));
      region.neighbor_sites.push_back(third);
      if (third == hn) break;
      // Neighbor across edge (h, third) = triangle opposite vertex `other`.
      int slot = 0;
      while (tv[slot] != other) ++slot;
      t = dt.neighbors[static_cast<size_t>(t)][static_cast<size_t>(slot)];
      other = third;
    }

    vd.regions[static_cast<size_t>(k)] = std::move(region);
    vd.region_of[static_cast<size_t>(h)] = k;
  }

  return vd;
}

Fpvd fpvd_two_sites(const PointSet& ps, const Hull& hull) {
  const int i = hull.vertices[0], j = hull.vertices[1];
  const Point mid = 0.5 * (ps[i] + ps[j]);
  Point d = rot90(ps[j] - ps[i]);
  d = (1.0 / norm(d)) * d;

  Fpvd vd;
  vd.hull = hull;
  const int lo = std::min(i, j), hi = std::max(i, j);
  for (int sgn : {+1, -1}) {
    FpvdEdge e;
    e.sites = {lo, hi};
    e.verts = {-1, -1};
    e.a = mid;
    e.b_or_dir = static_cast<double>(sgn) * d;
    e.unbounded = true;
    vd.edges.push_back(e);
  }
  vd.region_of.assign(static_cast<size_t>(ps.size()), -1);
  for (int k = 0; k < 2; ++k) {
    const int h = hull.vertices[static_cast<size_t>(k)];
    FpvdRegion r;
    r.site = h;
    r.edge_ids = {0, 1};
    r.neighbor_sites = {k == 0 ? hull.vertices[1] : hull.vertices[0],
                        k == 0 ? hull.vertices[1] : hull.vertices[0]};
    vd.regions.push_back(std::move(r));
    vd.region_of[static_cast<size_t>(h)] = k;
  }
  return vd;
}

}  // namespace

FarthestStructures build_farthest_structures(const PointSet& ps) {
  Hull hull = convex_hull(ps);
  if (hull.size() < 2)
    throw SingletonInput("diagram needs at least 2 distinct locations");
  FarthestStructures fs;
  if (hull.size() == 2) {
    fs.fpdt.hull = hull;
    fs.fpvd = fpvd_two_sites(ps, hull);
  } else {
    fs.fpdt = build_fpdt(ps);
    fs.fpvd = fpvd_from_fpdt(ps, fs.fpdt);
  }
  return fs;
}

Fpvd build_fpvd(const PointSet& ps) {
  return build_farthest_structures(ps).fpvd;
}

std::vector<int> locate_farthest(const PointSet& ps, Point s) {
  double dmax2 = 0.0;
  for (const Point& p : ps) dmax2 = std::max(dmax2, dist2(s, p));
  const double lim = std::sqrt(dmax2) * (1.0 - 1e-12);
  const double lim2 = lim * lim;
  std::vector<int> out;
  for (int i = 0; i < ps.size(); ++i)
    if (dist2(s, ps[i]) >= lim2) out.push_back(i);
  return out;
}

bool region_contains(const PointSet& ps, const Fpvd& vd, int region_id,
                     Point p, double tol) {
  const auto& r = vd.regions[static_cast<size_t>(region_id)];
  const double dh = dist(p, ps[r.site]);
  for (int g : r.neighbor_sites)
    if (dist(p, ps[g]) > dh + tol) return false;
  return true;
}

FaceBijection::FaceBijection(const Fpdt& dt, const Fpvd& vd)
    : tri_count_(dt.size()), edge_count_(static_cast<int>(dt.edges.size())) {
  if (dt.size() != static_cast<int>(vd.vertices.size()) ||
      dt.edges.size() != vd.edges.size())
    throw InconsistentResult("triangulation and diagram are not aligned");
  region_of_ = vd.region_of;
  site_of_.resize(vd.regions.size());
  for (size_t r = 0; r < vd.regions.size(); ++r)
    site_of_[r] = vd.regions[r].site;
}

FaceRef FaceBijection::dual(FaceRef f) const {
  using K = FaceRef::Kind;
  auto check = [&](bool ok) {
    if (!ok) throw UnknownFace("face not present in the structure");
  };
  switch (f.kind) {
    case K::DtTriangle:
      check(f.id >= 0 && f.id < tri_count_);
      return {K::VdVertex, f.id};
    case K::VdVertex:
      check(f.id >= 0 && f.id < tri_count_);
      return {K::DtTriangle, f.id};
    case K::DtEdge:
      check(f.id >= 0 && f.id < edge_count_);
      return {K::VdEdge, f.id};
    case K::VdEdge:
      check(f.id >= 0 && f.id < edge_count_);
      return {K::DtEdge, f.id};
    case K::DtSite:
      check(f.id >= 0 && f.id < static_cast<int>(region_of_.size()) &&
            region_of_[static_cast<size_t>(f.id)] >= 0);
      return {K::VdRegion, region_of_[static_cast<size_t>(f.id)]};
    case K::VdRegion:
      check(f.id >= 0 && f.id < static_cast<int>(site_of_.size()));
      return {K::DtSite, site_of_[static_cast<size_t>(f.id)]};
  }
  throw UnknownFace("unrecognised face kind");
}

std::vector<std::string> check_structures(const PointSet& ps, const Fpdt& dt,
                                          const Fpvd& vd) {
  std::vector<std::string> bad;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };

  const int m = vd.hull.size();
  if (m == 2) {
    expect(vd.vertices.empty() && vd.edges.size() == 2,
           "two-site diagram should be exactly two opposite rays");
    return bad;
  }

  const int T = dt.size();
  expect(T == m - 2, "triangle count != m-2");
  expect(static_cast<int>(dt.edges.size()) == 2 * m - 3,
         "edge count != 2m-3");
  expect(vd.vertices.size() == dt.triangles.size(), "vertex/triangle counts");
  expect(vd.edges.size() == dt.edges.size(), "edge counts");
  expect(static_cast<int>(vd.regions.size()) == m, "region/hull counts");

  // Every triangle circumcircle contains every hull vertex (exact). This is
  // quadratic, so on large hulls only a deterministic stride of triangles is
  // checked; each checked triangle still sees every hull vertex.
  const long full = static_cast<long>(m) * std::max(T, 1);
  const int tstep =
      full <= (1 << 18) ? 1 : static_cast<int>(full / (1 << 18)) + 1;
  for (int t = 0; t < T; t += tstep) {
    const auto& tv = dt.triangles[static_cast<size_t>(t)];
    for (int h : dt.hull.vertices) {
      if (h == tv[0] || h == tv[1] || h == tv[2]) continue;
      if (incircle(ps[tv[0]], ps[tv[1]], ps[tv[2]], ps[h]) < 0) {
        bad.push_back("a circumcircle excludes a hull vertex");
        t = T;
        break;
      }
    }
  }

  // Finite part of the diagram is a tree: m-2 vertices, m-3 bounded edges,
  // connected.
  int bounded = 0;
  Dsu dsu(T);
  for (const auto& e : vd.edges) {
    if (e.unbounded) continue;
    ++bounded;
    dsu.unite(e.verts[0], e.verts[1]);
  }
  expect(bounded == m - 3, "bounded edge count != m-3");
  int roots = 0;
  for (int t = 0; t < T; ++t) roots += dsu.find(t) == t;
  expect(roots == 1, "bounded edges do not connect all vertices");

  // Dual 1-faces are perpendicular; each vertex is equidistant from its
  // defining sites.
  const double scale = std::max(1.0, diameter(ps));
  for (size_t e = 0; e < vd.edges.size(); ++e) {
    const auto& ve = vd.edges[e];
    const Point site_dir = ps[ve.sites[1]] - ps[ve.sites[0]];
    const Point edge_dir =
        ve.unbounded ? ve.b_or_dir : ve.b_or_dir - ve.a;
    if (norm(edge_dir) > 1e-9 * scale &&
        std::abs(dot(site_dir, edge_dir)) >
            1e-9 * norm(site_dir) * norm(edge_dir)) {
      bad.push_back("a dual edge pair is not perpendicular");
      break;
    }
  }
  for (const auto& v : vd.vertices) {
    const double d0 = dist(v.pos, ps[v.sites[0]]);
    for (int k = 1; k < 3; ++k) {
      if (std::abs(dist(v.pos, ps[v.sites[k]]) - d0) > 1e-7 * scale) {
        bad.push_back("a vertex is not equidistant from its sites");
        break;
      }
    }
  }

  // The bijection is total and involutive over every face.
  try {
    const FaceBijection bij(dt, vd);
    using K = FaceRef::Kind;
    std::vector<FaceRef> faces;
    for (int t = 0; t < T; ++t) faces.push_back({K::DtTriangle, t});
    for (int e2 = 0; e2 < static_cast<int>(dt.edges.size()); ++e2)
      faces.push_back({K::DtEdge, e2});
    for (int h : dt.hull.vertices) faces.push_back({K::DtSite, h});
    for (const FaceRef& f : faces) {
      if (bij.dual(bij.dual(f)) != f) {
        bad.push_back("bijection is not involutive");
        break;
      }
    }
  } catch (const std::exception& ex) {
    bad.push_back(std::string("bijection failed: ") + ex.what());
  }

  return bad;
}

}  // namespace minpower
