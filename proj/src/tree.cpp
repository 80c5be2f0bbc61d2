#include "btstab/tree.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace btstab {

namespace {

int cap1_of(const Ext& E, int level) {
  return E.kind == ExtKind::ramified ? level / 2 : level;
}

bool key_is_zero(const ElemKey& k) {
  for (auto v : k)
    if (v) return false;
  return true;
}

ExtElem pi_E_pow(const Ext* e, int k) {
  ExtElem p = e_int(e, 1);
  if (e->kind == ExtKind::ramified) {
    ExtElem t = theta(e);
    for (int i = 0; i < k; ++i) p = p * t;
  } else {
    p = e_from_base(e, mul_pi_pow(make_elem(e->base, 1), k));
  }
  return p;
}

Vertex make_vertex(const Ext* e, int depth, bool unit_first, const ExtElem& z) {
  Vertex v;
  v.ext = e;
  v.depth = depth;
  v.unit_first = unit_first;
  v.z = e_reduce(z, depth);
  if (depth == 0) {
    v.unit_first = true;
    v.z = e_int(e, 0);
  }
  return v;
}

}  // namespace

Vertex root_vertex(const Ext* e) { return make_vertex(e, 0, true, e_int(e, 0)); }

VKey vertex_key(const Vertex& v) {
  VKey k;
  k.depth = v.depth;
  k.unit_first = v.unit_first;
  k.zk = e_key(v.z, v.depth);
  return k;
}

bool same_vertex(const Vertex& a, const Vertex& b) { return vertex_key(a) == vertex_key(b); }

Vertex normalize_point(const ExtElem& x, const ExtElem& y, int n) {
  if (n < 1) throw Error("normalize_point needs depth >= 1");
  if (val_E(x) == 0) return make_vertex(x.ext, n, true, e_inv(x) * y);
  if (val_E(y) == 0) return make_vertex(x.ext, n, false, x * e_inv(y));
  throw NotUnimodular("both coordinates have positive valuation");
}

Vertex parent(const Vertex& v) {
  if (v.depth == 0) throw Error("root has no parent");
  return make_vertex(v.ext, v.depth - 1, v.unit_first, v.z);
}

std::vector<Vertex> children(const Vertex& v) {
  const Ext* e = v.ext;
  if (v.depth + 1 > e->prec_e) throw PrecisionTooSmall("child depth beyond extension precision");
  std::vector<Vertex> out;
  if (v.depth == 0) {
    for (const ExtElem& r : enumerate_E(e, 1)) out.push_back(make_vertex(e, 1, true, r));
    out.push_back(make_vertex(e, 1, false, e_int(e, 0)));
    return out;
  }
  ExtElem step = pi_E_pow(e, v.depth);
  for (const ExtElem& r : enumerate_E(e, 1))
    out.push_back(make_vertex(e, v.depth + 1, v.unit_first, v.z + r * step));
  return out;
}

int distance(const Vertex& u, const Vertex& v) {
  Vertex a = u, b = v;
  int extra = 0;
  while (a.depth > b.depth) {
    a = parent(a);
    ++extra;
  }
  while (b.depth > a.depth) {
    b = parent(b);
    ++extra;
  }
  int climb = 0;
  while (!same_vertex(a, b)) {
    a = parent(a);
    b = parent(b);
    ++climb;
  }
  return extra + 2 * climb;
}

std::vector<Vertex> all_vertices_at_depth(const Ext* e, int depth) {
  if (depth == 0) return {root_vertex(e)};
  std::vector<Vertex> out;
  for (const ExtElem& z : enumerate_E(e, depth)) out.push_back(make_vertex(e, depth, true, z));
  for (const ExtElem& z : enumerate_E(e, depth))
    if (val_E(z) != 0) out.push_back(make_vertex(e, depth, false, z));
  return out;
}

bool is_on_image(const Vertex& v) {
  if (v.depth == 0) return true;
  return key_is_zero(key_at(v.z.x1, cap1_of(*v.ext, v.depth)));
}

bool is_embedded_vertex(const Vertex& v) {
  return is_on_image(v) && v.depth % v.ext->e_rel == 0;
}

Vertex galois_act_vertex(const Vertex& v) {
  if (v.depth == 0) return v;
  return make_vertex(v.ext, v.depth, v.unit_first, conj(v.z));
}

bool galois_fixed(const Vertex& v) { return same_vertex(v, galois_act_vertex(v)); }

BaseVertex base_root(const Field* f) {
  BaseVertex v;
  v.fld = f;
  v.z = make_elem(f, 0);
  return v;
}

BaseVertex normalize_base_point(const RingElem& x, const RingElem& y, int n) {
  if (n < 1) throw Error("normalize_base_point needs depth >= 1");
  BaseVertex v;
  v.fld = x.fld;
  v.depth = n;
  if (is_unit(x)) {
    v.unit_first = true;
    v.z = reduce_to(inv(x) * y, n);
  } else if (is_unit(y)) {
    v.unit_first = false;
    v.z = reduce_to(x * inv(y), n);
  } else {
    throw NotUnimodular("both coordinates have positive valuation");
  }
  return v;
}

BaseVertex base_parent(const BaseVertex& v) {
  if (v.depth == 0) throw Error("root has no parent");
  BaseVertex p = v;
  p.depth = v.depth - 1;
  p.z = reduce_to(v.z, p.depth);
  if (p.depth == 0) {
    p.unit_first = true;
    p.z = make_elem(v.fld, 0);
  }
  return p;
}

int base_distance(const BaseVertex& u, const BaseVertex& v) {
  BaseVertex a = u, b = v;
  int extra = 0;
  while (a.depth > b.depth) {
    a = base_parent(a);
    ++extra;
  }
  while (b.depth > a.depth) {
    b = base_parent(b);
    ++extra;
  }
  int climb = 0;
  auto same = [](const BaseVertex& x, const BaseVertex& y) {
    return x.depth == y.depth && x.unit_first == y.unit_first &&
           key_at(x.z, x.depth) == key_at(y.z, y.depth);
  };
  while (!same(a, b)) {
    a = base_parent(a);
    b = base_parent(b);
    ++climb;
  }
  return extra + 2 * climb;
}

std::vector<BaseVertex> base_vertices_at_depth(const Field* f, int depth) {
  if (depth == 0) return {base_root(f)};
  std::vector<BaseVertex> out;
  for (const RingElem& z : enumerate_residues(f, depth)) {
    BaseVertex v;
    v.fld = f;
    v.depth = depth;
    v.unit_first = true;
    v.z = z;
    out.push_back(v);
  }
  for (const RingElem& z : enumerate_residues(f, depth)) {
    if (valuation(z) == 0) continue;
    BaseVertex v;
    v.fld = f;
    v.depth = depth;
    v.unit_first = false;
    v.z = reduce_to(z, depth);
    out.push_back(v);
  }
  return out;
}

Vertex embed_vertex(const BaseVertex& v, const Ext* e) {
  if (v.fld != e->base) throw CtxMismatch("base vertex over a different field");
  int depth = v.depth * e->e_rel;
  if (depth > e->prec_e) throw PrecisionTooSmall("embedded depth beyond extension precision");
  if (v.depth == 0) return root_vertex(e);
  return make_vertex(e, depth, v.unit_first, e_from_base(e, v.z));
}

int point_level(const Vertex& v) {
  if (is_on_image(v)) throw PointIsRational("vertex lies on the image of the base tree");
  std::set<VKey> seen;
  std::deque<std::pair<Vertex, int>> queue;
  queue.push_back({v, 0});
  seen.insert(vertex_key(v));
  int horizon = 2 * v.depth;
  while (!queue.empty()) {
    auto [cur, dist] = queue.front();
    queue.pop_front();
    if (is_embedded_vertex(cur)) return dist;
    if (dist >= horizon) continue;
    std::vector<Vertex> nbrs;
    if (cur.depth > 0) nbrs.push_back(parent(cur));
    if (cur.depth + 1 <= v.ext->prec_e && cur.depth + 1 <= 2 * v.depth) {
      for (const Vertex& c : children(cur)) nbrs.push_back(c);
    }
    for (const Vertex& w : nbrs) {
      VKey k = vertex_key(w);
      if (seen.insert(k).second) queue.push_back({w, dist + 1});
    }
  }
  throw Error("level search exhausted its horizon");
}

QuadraticPoint quadratic_point(const ExtElem& x, const ExtElem& y, int n) {
  Vertex v = normalize_point(x, y, n);
  if (is_on_image(v)) throw PointIsRational("point lies on the image of the base tree");
  QuadraticPoint q;
  q.rep = v;
  q.conj_rep = galois_act_vertex(v);
  q.level = point_level(v);
  return q;
}

int barb_diameter(const ExtCtx& ext) {
  if (ext->kind == ExtKind::unramified) return 0;
  bool trace_zero_lup = ext->diff_val == ext->e_abs + 1;
  return trace_zero_lup ? ext->e_abs : ext->e_abs - 1;
}

BarbSurvey survey_barbs(const ExtCtx& ext, int max_depth) {
  BarbSurvey s;
  s.expected = barb_diameter(ext);
  std::vector<Vertex> fixed_off;
  std::map<VKey, int> comp_of;
  bool fixed_is_image = true;
  for (int d = 1; d <= max_depth; ++d) {
    for (const Vertex& v : all_vertices_at_depth(ext.get(), d)) {
      if (!galois_fixed(v)) continue;
      if (is_on_image(v)) continue;
      fixed_is_image = false;
      fixed_off.push_back(v);
    }
  }
  s.fixed_equals_image = fixed_is_image;
  if (ext->kind == ExtKind::unramified) {
    s.all_match = fixed_is_image;
    return s;
  }

  // group into components along parent links (vertices sorted by depth already)
  std::vector<std::vector<Vertex>> comps;
  std::vector<Vertex> attach;
  for (const Vertex& v : fixed_off) {
    Vertex p = parent(v);
    auto it = comp_of.find(vertex_key(p));
    int id;
    if (it == comp_of.end()) {
      id = static_cast<int>(comps.size());
      comps.push_back({});
      attach.push_back(p);
    } else {
      id = it->second;
    }
    comp_of[vertex_key(v)] = id;
    comps[id].push_back(v);
  }

  bool all_match = true;
  std::size_t complete = 0;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (attach[i].depth + ext->e_abs + 1 > max_depth) continue;  // possibly truncated
    ++complete;
    int protrusion = 0;
    for (const Vertex& a : comps[i]) protrusion = std::max(protrusion, distance(attach[i], a));
    s.measured = std::max(s.measured, protrusion);
    if (protrusion != s.expected) all_match = false;
  }
  s.component_count = complete;
  s.all_match = all_match && complete > 0;
  return s;
}

std::string vertex_label(const Vertex& v) {
  std::ostringstream os;
  if (v.depth == 0) return "0:0:0";
  if (v.unit_first)
    os << "1:" << format_elem_E(v.z) << ":" << v.depth;
  else
    os << format_elem_E(v.z) << ":1:" << v.depth;
  return os.str();
}

namespace {

struct TreeScan {
  std::vector<Vertex> verts;
  std::map<VKey, int> id;
  std::vector<std::pair<int, int>> edges;
};

TreeScan scan_tree(const ExtCtx& ext, int depth) {
  TreeScan t;
  for (int d = 0; d <= depth; ++d) {
    auto layer = all_vertices_at_depth(ext.get(), d);
    std::sort(layer.begin(), layer.end(),
              [](const Vertex& a, const Vertex& b) { return vertex_key(a) < vertex_key(b); });
    for (const Vertex& v : layer) {
      int vid = static_cast<int>(t.verts.size());
      t.id[vertex_key(v)] = vid;
      t.verts.push_back(v);
      if (d > 0) t.edges.push_back({t.id.at(vertex_key(parent(v))), vid});
    }
  }
  return t;
}

}  // namespace

void tree_export_dot(const ExtCtx& ext, int depth, std::ostream& os) {
  TreeScan t = scan_tree(ext, depth);
  os << "graph tree {\n  node [shape=circle];\n";
  for (size_t i = 0; i < t.verts.size(); ++i) {
    const Vertex& v = t.verts[i];
    os << "  v" << i << " [label=\"" << vertex_label(v) << "\"";
    if (is_embedded_vertex(v)) os << ", shape=box, style=filled, fillcolor=lightgrey";
    else if (is_on_image(v)) os << ", shape=box";
    if (galois_fixed(v)) os << ", penwidth=2";
    os << "];\n";
  }
  for (auto [a, b] : t.edges) os << "  v" << a << " -- v" << b << ";\n";
  os << "}\n";
}

std::string tree_export_json(const ExtCtx& ext, int depth) {
  TreeScan t = scan_tree(ext, depth);
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const Vertex& v : t.verts) {
    nlohmann::json jv;
    if (v.depth == 0) {
      jv["x"] = "0";
      jv["y"] = "0";
    } else if (v.unit_first) {
      jv["x"] = "1";
      jv["y"] = format_elem_E(v.z);
    } else {
      jv["x"] = format_elem_E(v.z);
      jv["y"] = "1";
    }
    jv["n"] = v.depth;
    jv["rational"] = is_on_image(v);
    jv["galois_fixed"] = galois_fixed(v);
    j["vertices"].push_back(jv);
  }
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : t.edges) j["edges"].push_back({a, b});
  return j.dump(2);
}

}  // namespace btstab
