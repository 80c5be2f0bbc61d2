#pragma once

#include <iosfwd>

#include "btstab/quadext.hpp"

namespace btstab {

struct NotUnimodular : Error { using Error::Error; };
struct PointIsRational : Error { using Error::Error; };

// A vertex of the tree of E at depth n, stored in canonical projective form:
// (1, z) when the first coordinate is a unit, else (z, 1) with z in p_E.
// The root (depth 0) is the unique base vertex.
struct Vertex {
  const Ext* ext = nullptr;
  int depth = 0;
  bool unit_first = true;
  ExtElem z;
};

struct VKey {
  int depth = 0;
  bool unit_first = true;
  ExtKey zk{};
  auto operator<=>(const VKey&) const = default;
};

Vertex root_vertex(const Ext* e);
VKey vertex_key(const Vertex& v);
bool same_vertex(const Vertex& a, const Vertex& b);
std::string vertex_label(const Vertex& v);  // "x:y:n" with element literals

Vertex normalize_point(const ExtElem& x, const ExtElem& y, int n);
Vertex parent(const Vertex& v);
std::vector<Vertex> children(const Vertex& v);
int distance(const Vertex& u, const Vertex& v);
std::vector<Vertex> all_vertices_at_depth(const Ext* e, int depth);

// Vertex lies on the image of the base tree (embedded vertices and, in the
// ramified case, the subdivision points of embedded edges).
bool is_on_image(const Vertex& v);
// Vertex is the image of an actual base-tree vertex.
bool is_embedded_vertex(const Vertex& v);

Vertex galois_act_vertex(const Vertex& v);
bool galois_fixed(const Vertex& v);

// Base-tree vertices, used by the embedding and its tests.
struct BaseVertex {
  const Field* fld = nullptr;
  int depth = 0;
  bool unit_first = true;
  RingElem z;
};
BaseVertex base_root(const Field* f);
BaseVertex normalize_base_point(const RingElem& x, const RingElem& y, int n);
BaseVertex base_parent(const BaseVertex& v);
int base_distance(const BaseVertex& u, const BaseVertex& v);
std::vector<BaseVertex> base_vertices_at_depth(const Field* f, int depth);
Vertex embed_vertex(const BaseVertex& v, const Ext* e);

// Distance to the nearest embedded base-tree vertex (BFS, bounded by 2*depth).
int point_level(const Vertex& v);

struct QuadraticPoint {
  Vertex rep;
  Vertex conj_rep;
  int level = 0;
};
QuadraticPoint quadratic_point(const ExtElem& x, const ExtElem& y, int n);

// e_E - 1, or e_E when a trace-zero uniformizer exists; 0 for unramified.
int barb_diameter(const ExtCtx& ext);

struct BarbSurvey {
  int expected = 0;
  int measured = -1;                 // protrusion of complete components off the image
  std::size_t component_count = 0;   // completely visible components
  bool all_match = false;            // every complete component protrudes as expected
  bool fixed_equals_image = false;   // Galois-fixed set == image (unramified case)
};
// Measures how far the Galois-fixed components off the image protrude: the
// maximal distance from a component vertex to its attachment on the image.
BarbSurvey survey_barbs(const ExtCtx& ext, int max_depth);

void tree_export_dot(const ExtCtx& ext, int depth, std::ostream& os);
std::string tree_export_json(const ExtCtx& ext, int depth);

}  // namespace btstab
