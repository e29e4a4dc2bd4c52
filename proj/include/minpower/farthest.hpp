#pragma once

#include <array>
#include <string>
#include <vector>

#include "minpower/geom.hpp"

namespace minpower {

// Farthest-point Delaunay triangulation of the hull vertices: the unique
// triangulation (after cocircular tie-breaking) in which every triangle's
// circumcircle contains the whole point set, boundary included.
//
// Exact cocircular ties are grouped; within a group the triangulation is
// canonicalised to the one whose sorted list of sorted index triples is
// lexicographically smallest, so rebuilding the same input always yields
// byte-identical structures.
struct Fpdt {
  Hull hull;  // CCW hull vertex indices into the defining set

  // Canonical order: each triple starts at its smallest site, stays CCW;
  // the list is sorted by sorted triple.
  std::vector<std::array<int, 3>> triangles;
  // neighbors[t][k] is the triangle across the edge opposite triangles[t][k]
  // (-1 for a hull edge).
  std::vector<std::array<int, 3>> neighbors;

  // Every triangulation edge as {lo, hi}, sorted lexicographically.
  std::vector<std::array<int, 2>> edges;
  // Triangles flanking edges[e] ({t, -1} for a hull edge).
  std::vector<std::array<int, 2>> edge_tris;

  // Exactly-cocircular site tuples of size >= 4 (sorted), and the group id
  // of each triangle (-1 when its circumcircle is unshared).
  std::vector<std::vector<int>> cocircular_groups;
  std::vector<int> tri_group;

  int size() const { return static_cast<int>(triangles.size()); }
};

// One vertex of the farthest-point Voronoi diagram: the circumcentre of the
// dual triangle. All vertices of a cocircular group share one position.
struct FpvdVertex {
  Point pos;
  std::array<int, 3> sites;  // defining triple (dual triangle)
  int group = -1;            // cocircular group id, -1 if none
};

// One edge: a piece of the bisector of `sites`. Segments store both
// endpoints; unbounded edges store a finite anchor and a unit direction.
// Edges between vertices of one cocircular group have zero length; they
// keep the dual bijection total when more than three sites are cocircular.
struct FpvdEdge {
  std::array<int, 2> sites;  // {lo, hi}
  std::array<int, 2> verts;  // vertex ids, -1 for an unbounded end
  Point a;                   // finite anchor
  Point b_or_dir;            // other endpoint, or unit direction if unbounded
  bool unbounded = false;
};

// The (always unbounded) cell of one hull site: edge ids in order around the
// cell, with the neighbouring site across each edge.
struct FpvdRegion {
  int site = -1;
  std::vector<int> edge_ids;
  std::vector<int> neighbor_sites;
};

// Farthest-point Voronoi diagram. Its finite edge graph is a tree: for a
// hull of m >= 3 vertices there are m-2 vertices, m-3 bounded edges and m
// unbounded ones, matching the triangulation across the index-aligned
// bijection (vertex i <-> triangle i, edge i <-> edge i).
struct Fpvd {
  Hull hull;
  std::vector<FpvdVertex> vertices;
  std::vector<FpvdEdge> edges;
  std::vector<FpvdRegion> regions;
  std::vector<int> region_of;  // site index -> region id, -1 off the hull
  std::vector<std::vector<int>> cocircular_groups;
};

struct FaceRef {
  enum class Kind { DtSite, DtEdge, DtTriangle, VdRegion, VdEdge, VdVertex };
  Kind kind;
  int id;  // DtSite: site index; others: index into the owning structure

  friend bool operator==(const FaceRef&, const FaceRef&) = default;
};

// Total, involutive map between faces of the two structures:
// triangle <-> vertex, edge <-> edge, site <-> region.
class FaceBijection {
 public:
  FaceBijection(const Fpdt& dt, const Fpvd& vd);

  // Throws UnknownFace for an out-of-range id or a non-hull site.
  FaceRef dual(FaceRef f) const;

  int triangle_count() const { return tri_count_; }
  int edge_count() const { return edge_count_; }

 private:
  int tri_count_ = 0;
  int edge_count_ = 0;
  std::vector<int> region_of_;  // site -> region id
  std::vector<int> site_of_;    // region id -> site
};

// Throws DegenerateHull when fewer than 3 distinct hull vertices exist.
Fpdt build_fpdt(const PointSet& ps);

// Works for any input with >= 2 distinct locations (SingletonInput
// otherwise). A two-vertex hull (including collinear input) degenerates to
// the bisector of the extremes, stored as two opposite rays.
Fpvd build_fpvd(const PointSet& ps);

// Convenience bundle so the solver can reuse one consistent build.
struct FarthestStructures {
  Fpdt fpdt;  // empty (no triangles) when the hull has 2 vertices
  Fpvd fpvd;
};
FarthestStructures build_farthest_structures(const PointSet& ps);

// All indices whose distance to s is within relative tolerance 1e-12 of the
// maximum.
std::vector<int> locate_farthest(const PointSet& ps, Point s);

// Membership in the closed cell of a region, up to `tol` in distance units:
// p is no closer to any neighbouring site than to the region's own site.
bool region_contains(const PointSet& ps, const Fpvd& vd, int region_id,
                     Point p, double tol);

// Structural sanity for tests and `validate`: counts, tree connectivity,
// bijection totality, and perpendicularity of dual edge pairs. Returns a
// list of human-readable violations (empty when consistent).
std::vector<std::string> check_structures(const PointSet& ps,
                                          const Fpdt& dt, const Fpvd& vd);

}  // namespace minpower
