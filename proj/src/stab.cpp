#include "btstab/stab.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <thread>

namespace btstab {

namespace {

int floordiv2(int t) { return (t - (t < 0 ? 1 : 0)) / 2; }
int ceildiv2(int t) { return floordiv2(t + 1); }

bool in_unit_filtration(const RingElem& u, int k) {
  if (!is_unit(u)) return false;
  if (k <= 0) return true;
  return valuation(u - make_elem(u.fld, 1)) >= k;
}

bool in_ideal(const RingElem& v, int k) {
  if (k <= 0) return true;
  int val = valuation(v);
  return val >= k;
}

}  // namespace

ClosedFormParams closed_form_params(const ExtCtx& ext, int n) {
  ClosedFormParams p;
  p.n = n;
  p.unramified = ext->kind == ExtKind::unramified;
  p.m = std::min(n / 2, ext->base->e);
  p.eps = ext->e_rel - 1;
  if (p.unramified) {
    p.t = 0;
    p.del = 0;
  } else {
    p.t = std::min(n, ext->diff_val - 1);
    // ceil((e_E + 1 - diff_val)/e_E); lands in {0,1} for quadratic extensions
    int k = ext->e_abs + 1 - ext->diff_val;
    p.del = k <= 0 ? 0 : (k + ext->e_abs - 1) / ext->e_abs;
  }
  return p;
}

bool coset_equal(const CosetSet& a, const CosetSet& b) {
  if (a.level != b.level || a.mats.size() != b.mats.size()) return false;
  for (size_t i = 0; i < a.mats.size(); ++i)
    if (!mat_equal_at(a.mats[i], b.mats[i], a.level)) return false;
  return true;
}

bool coset_subset(const CosetSet& a, const CosetSet& b) {
  if (a.level != b.level) return false;
  for (const Mat2& m : a.mats)
    if (!set_contains(b.mats, m, b.level)) return false;
  return true;
}

CosetSet conjugated_set(const Mat2& g, const CosetSet& s) {
  CosetSet out;
  out.level = s.level;
  Mat2 gi = mat_inv(g);
  for (const Mat2& m : s.mats) out.mats.push_back(mat_reduce(g * m * gi, s.level));
  sort_by_key(out.mats, out.level);
  return out;
}

OracleSets oracle_scan(const QuadraticPoint& q, int N, const Budgets& budgets) {
  const Ext* E = q.rep.ext;
  const Field* f = E->base;
  if (q.rep.depth > E->e_rel * N) throw PrecisionTooSmall("N too small for the point depth");
  if (count_sl2(f, N) > budgets.max_enum) throw BudgetExceeded("oracle enumeration too large");

  int jobs = std::max(1, budgets.jobs);
  std::vector<std::vector<Mat2>> fix_found(jobs), swap_found(jobs);
  auto scan = [&](int part) {
    for_each_sl2_part(f, N, part, jobs, [&](const Mat2& g) {
      Vertex img = act(g, q.rep);
      if (same_vertex(img, q.rep))
        fix_found[part].push_back(g);
      else if (same_vertex(img, q.conj_rep))
        swap_found[part].push_back(g);
    });
  };
  if (jobs == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (int p = 0; p < jobs; ++p) pool.emplace_back(scan, p);
    for (auto& th : pool) th.join();
  }

  OracleSets out;
  out.orbit.level = out.fixed.level = N;
  for (int p = 0; p < jobs; ++p) {
    for (const Mat2& m : fix_found[p]) {
      out.fixed.mats.push_back(m);
      out.orbit.mats.push_back(m);
    }
    for (const Mat2& m : swap_found[p]) out.orbit.mats.push_back(m);
  }
  sort_by_key(out.fixed.mats, N);
  sort_by_key(out.orbit.mats, N);

  // soundness: re-apply the action to everything collected
  for (const Mat2& m : out.orbit.mats) {
    Vertex img = act(m, q.rep);
    if (!same_vertex(img, q.rep) && !same_vertex(img, q.conj_rep))
      throw Error("oracle soundness re-check failed");
  }
  return out;
}

CosetSet brute_force_stabilizer(const QuadraticPoint& q, int N, const Budgets& budgets) {
  return oracle_scan(q, N, budgets).orbit;
}

namespace {

// The j-shape family ((1+pi^{n-m}a, pi^{n-eps}b),(pi^n c, 1+pi^{n-m}d)) with
// determinant 1, reduced mod K_N.
std::vector<Mat2> j_family(const Field* f, int N, int n, int m, int eps) {
  int ediag = std::max(n - m, 0);
  int eb = std::max(n - eps, 0);
  int ec = std::max(n, 0);
  RingElem one = make_elem(f, 1);
  auto diag_reps = enumerate_residues(f, std::max(N - ediag, 1));
  auto b_reps = enumerate_residues(f, std::max(N - eb, 1));
  auto c_reps = enumerate_residues(f, std::max(N - ec, 1));
  std::set<MatKey> seen;
  std::vector<Mat2> out;
  for (const RingElem& da : diag_reps) {
    RingElem u1 = one + mul_pi_pow(da, ediag);
    if (!is_unit(u1)) continue;  // reachable only under mutated parameters
    RingElem u1i = inv(u1);
    for (const RingElem& rb : b_reps) {
      RingElem B = mul_pi_pow(rb, eb);
      for (const RingElem& rc : c_reps) {
        RingElem C = mul_pi_pow(rc, ec);
        RingElem u2 = (one + B * C) * u1i;
        if (!in_unit_filtration(u2, ediag)) continue;
        Mat2 g = mat_reduce({u1, B, C, u2}, N);
        if (seen.insert(mat_key(g, N)).second) out.push_back(g);
      }
    }
  }
  sort_by_key(out, N);
  return out;
}

struct SFactors {
  std::vector<Mat2> mats;  // includes the identity when (1, 0) is admitted
};

// Ranges of the ramified correction factor s = diag(1, z) (x + y P), where P
// is the companion matrix attached to the point's uniformizer direction.
// The box is the coordinate form of x + y*mu in U_E^{2n-t}: the even part of
// the filtration constrains x at n - floor(t/2), the odd part constrains y at
// n - ceil(t/2).  Tails inside U^{n-m} x p^{n-1} are absorbed by the j-factor.
SFactors s_family(const Field* f, int N, const ClosedFormParams& p, RangeParse parse,
                  const Mutation& mut, const RingElem& tr_w, const RingElem& nm_w) {
  int m = p.m, t = p.t;
  int dxa = 0, dya = 0;
  switch (mut.target) {
    case Mutation::Target::m: m += mut.delta; break;
    case Mutation::Target::t: t += mut.delta; break;
    case Mutation::Target::xlow: dxa = mut.delta; break;
    case Mutation::Target::ylow: dya = mut.delta; break;
    // eps only enters the j-factor; del is an invariant of E that the
    // corrected ranges do not consume
    case Mutation::Target::eps: break;
    case Mutation::Target::del: break;
    case Mutation::Target::none: break;
  }
  int n = p.n;
  int xa = n - floordiv2(t) + dxa;
  int xb = n - m;
  int ya = n - ceildiv2(t) + dya;
  int yb = n - 1;

  RingElem one = make_elem(f, 1), zero = make_elem(f, 0);
  std::vector<RingElem> xs, ys;
  for (const RingElem& u : enumerate_residues(f, N)) {
    if (in_unit_filtration(u, xa) && !in_unit_filtration(u, xb)) xs.push_back(u);
    if (in_ideal(u, ya) && !in_ideal(u, yb)) ys.push_back(u);
  }
  bool with_trivial = parse == RangeParse::union_of_difference;
  std::vector<std::pair<RingElem, RingElem>> pairs;
  if (with_trivial) {
    pairs.push_back({one, zero});
    for (const RingElem& x : xs) pairs.push_back({x, zero});
    for (const RingElem& y : ys) pairs.push_back({one, y});
    for (const RingElem& x : xs)
      for (const RingElem& y : ys) pairs.push_back({x, y});
  } else {
    for (const RingElem& x : xs)
      for (const RingElem& y : ys) pairs.push_back({x, y});
  }

  SFactors out;
  std::set<MatKey> seen;
  for (auto& [x, y] : pairs) {
    // z = N(x + y*mu)^{-1} with mu = -conj(w): the norm is x^2 - xy Tr(w) + y^2 N(w)
    RingElem nrm = x * x - x * y * tr_w + y * y * nm_w;
    if (!is_unit(nrm)) continue;
    RingElem z = inv(nrm);
    // x*1 + y*P_pt with P_pt = ((-Tr w, 1),(-N w, 0))
    Mat2 base{x - y * tr_w, y, -(y * nm_w), x};
    Mat2 s{base.a, base.b, z * base.c, z * base.d};
    s = mat_reduce(s, N);
    if (seen.insert(mat_key(s, N)).second) out.mats.push_back(s);
  }
  return out;
}

// Scalars u*1 with u^2 = 1 at level L: the kernel of the projective action at
// that resolution.  Ball stabilizers are unions of their cosets.
std::vector<Mat2> projective_kernel_scalars(const Field* f, int L) {
  std::vector<Mat2> out;
  RingElem one = make_elem(f, 1);
  for (const RingElem& u : enumerate_residues(f, L)) {
    if (!is_unit(u)) continue;
    if (valuation(u * u - one) < L) continue;
    RingElem z = make_elem(f, 0);
    out.push_back({u, z, z, u});
  }
  return out;
}

std::vector<Mat2> saturate_by_scalars(const std::vector<Mat2>& set, const std::vector<Mat2>& zs,
                                      int level, int ambient_k) {
  std::set<MatKey> seen;
  std::vector<Mat2> out;
  for (const Mat2& z : zs)
    for (const Mat2& g : set) {
      Mat2 m = mat_reduce(z * g, level);
      if (!subgroup_member(m, Subgroup::K, ambient_k, level)) continue;
      if (seen.insert(mat_key(m, level)).second) out.push_back(m);
    }
  sort_by_key(out, level);
  return out;
}

void require_normalized(const QuadraticPoint& q) {
  const Ext* E = q.rep.ext;
  if (!q.rep.unit_first) throw NotNormalized("representative must have unit first coordinate");
  if (q.level != q.rep.depth)
    throw NotNormalized("point must be at maximal distance from the embedded base tree");
  ExtKey k = e_key(q.rep.z, q.rep.depth);
  for (auto v : k[0])
    if (v) throw NotNormalized("representative direction must have no base-field part");
  (void)E;
}

}  // namespace

CosetSet closed_form_stabilizer(const QuadraticPoint& q, int N, const ClosedFormParams& p,
                                RangeParse parse, const Mutation& mut) {
  require_normalized(q);
  const Ext* E = q.rep.ext;
  const Field* f = E->base;
  if (f->prec < N + 2 * f->e + 1) throw PrecisionTooSmall("closed form needs context headroom");

  ExtElem w = q.rep.z;
  ExtElem one_E = e_int(E, 1);
  TraceZeroMat tau = trace_zero_for_point(one_E, w);

  std::vector<Mat2> torus = torus_members(tau, N, N);
  int jm = p.m, jeps = p.eps;
  if (mut.target == Mutation::Target::m) jm += mut.delta;
  if (mut.target == Mutation::Target::eps) jeps += mut.delta;
  std::vector<Mat2> jfam = j_family(f, N, p.n, jm, jeps);

  // dedup the T*J layer before applying the ramified corrections
  std::set<MatKey> seen;
  std::vector<Mat2> tj;
  for (const Mat2& t : torus)
    for (const Mat2& j : jfam) {
      Mat2 g = mat_reduce(t * j, N);
      if (seen.insert(mat_key(g, N)).second) tj.push_back(g);
    }

  CosetSet out;
  out.level = N;
  if (p.unramified) {
    out.mats = std::move(tj);
    sort_by_key(out.mats, N);
    return out;
  }

  RingElem tr_w = trace(w), nm_w = norm(w);
  SFactors sf = s_family(f, N, p, parse, mut, tr_w, nm_w);
  std::set<MatKey> seen2;
  for (const Mat2& g : tj)
    for (const Mat2& s : sf.mats) {
      Mat2 m = mat_reduce(g * s, N);
      if (seen2.insert(mat_key(m, N)).second) out.mats.push_back(m);
    }
  sort_by_key(out.mats, N);
  return out;
}

bool torus_containment_check(const QuadraticPoint& q, int N, int n, const Budgets& budgets,
                             const CosetSet& oracle) {
  require_normalized(q);
  const Ext* E = q.rep.ext;
  const Field* f = E->base;
  ExtElem one_E = e_int(E, 1);
  TraceZeroMat tau = trace_zero_for_point(one_E, q.rep.z);
  std::vector<Mat2> torus = torus_members(tau, n, N);

  // J' = J_n (unramified) or Jr_{2n-1} (ramified)
  std::vector<Mat2> jprime;
  if (E->kind == ExtKind::unramified) {
    jprime = sl2_filter(f, N, budgets,
                        [&](const Mat2& m) { return subgroup_member(m, Subgroup::J, n, N); });
  } else {
    jprime = sl2_filter(f, N, budgets, [&](const Mat2& m) {
      return subgroup_member(m, Subgroup::Jr, 2 * n - 1, N);
    });
  }
  std::set<MatKey> product;
  for (const Mat2& t : torus)
    for (const Mat2& j : jprime) product.insert(mat_key(mat_reduce(t * j, N), N));
  for (const Mat2& g : oracle.mats)
    if (!product.count(mat_key(g, N))) return false;
  return true;
}

std::vector<QuadraticPoint> quadratic_point_orbit_reps(const ExtCtx& ext, int n,
                                                       const Budgets& budgets) {
  const Ext* E = ext.get();
  const Field* f = E->base;
  int D = n * E->e_rel;
  if (D > E->prec_e) throw PrecisionTooSmall("level beyond extension precision");

  // pool: off-image vertices at depth D whose level equals D
  std::vector<Vertex> pool;
  for (const Vertex& v : all_vertices_at_depth(E, D)) {
    if (is_on_image(v)) continue;
    if (point_level(v) == D) pool.push_back(v);
  }
  std::map<VKey, int> orbit_of;
  std::vector<std::vector<Vertex>> orbits;

  // generators of SL2(O/p^*): elementary matrices over residue representatives
  std::vector<Mat2> gens;
  RingElem one = make_elem(f, 1), zero = make_elem(f, 0);
  for (const RingElem& r : enumerate_residues(f, 1)) {
    if (is_zero(r)) continue;
    gens.push_back({one, r, zero, one});
    gens.push_back({one, zero, r, one});
  }

  for (const Vertex& v : pool) {
    if (orbit_of.count(vertex_key(v))) continue;
    int id = static_cast<int>(orbits.size());
    orbits.push_back({});
    std::vector<Vertex> frontier{v};
    orbit_of[vertex_key(v)] = id;
    orbits[id].push_back(v);
    while (!frontier.empty()) {
      if (orbits[id].size() > budgets.max_closure) throw BudgetExceeded("orbit too large");
      std::vector<Vertex> next;
      for (const Vertex& u : frontier)
        for (const Mat2& g : gens) {
          Vertex img = act(g, u);
          VKey k = vertex_key(img);
          if (!orbit_of.count(k)) {
            orbit_of[k] = id;
            orbits[id].push_back(img);
            next.push_back(img);
          }
        }
      frontier = std::move(next);
    }
  }

  std::vector<QuadraticPoint> reps;
  for (const auto& orb : orbits) {
    // choose the least pure representative: (1, w) with no base-field part
    const Vertex* best = nullptr;
    for (const Vertex& v : orb) {
      if (!v.unit_first) continue;
      ExtKey k = e_key(v.z, v.depth);
      bool pure = true;
      for (auto x : k[0])
        if (x) pure = false;
      if (!pure) continue;
      if (!best || vertex_key(v) < vertex_key(*best)) best = &v;
    }
    if (!best) throw Error("orbit without a pure representative");
    QuadraticPoint q;
    q.rep = *best;
    q.conj_rep = galois_act_vertex(*best);
    q.level = point_level(*best);
    reps.push_back(q);
  }
  std::sort(reps.begin(), reps.end(), [](const QuadraticPoint& a, const QuadraticPoint& b) {
    return vertex_key(a.rep) < vertex_key(b.rep);
  });
  return reps;
}

ExtDescriptor rebase_descriptor(const ExtDescriptor& desc, const FieldCtx& newbase) {
  ExtDescriptor d = desc;
  d.a = elem_from_key(newbase.get(), key_at(desc.a, std::min(desc.a.fld->prec, newbase->prec)));
  d.b = elem_from_key(newbase.get(), key_at(desc.b, std::min(desc.b.fld->prec, newbase->prec)));
  return d;
}

FieldCtx stab_work_base(const FieldCtx& base_proto, int N) {
  return clone_with_precision(base_proto, N + 3 * base_proto->e + 3);
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::equal: return "equal";
    case Verdict::closed_subset_strict: return "closed_subset_strict";
    case Verdict::mismatch: return "mismatch";
  }
  return "?";
}

std::string parse_name(RangeParse p) {
  return p == RangeParse::union_of_difference ? "union_of_difference" : "difference_of_union";
}

namespace {

Verdict compare_sets(const CosetSet& oracle, const CosetSet& closed,
                     std::vector<std::string>& witnesses) {
  if (coset_equal(oracle, closed)) return Verdict::equal;
  bool closed_in_oracle = coset_subset(closed, oracle);
  const int kMaxWitnesses = 3;
  if (closed_in_oracle) {
    for (const Mat2& m : oracle.mats) {
      if (!set_contains(closed.mats, m, closed.level)) {
        if (witnesses.size() < kMaxWitnesses) witnesses.push_back(format_mat(m));
      }
    }
    return Verdict::closed_subset_strict;
  }
  for (const Mat2& m : closed.mats) {
    if (!set_contains(oracle.mats, m, oracle.level)) {
      if (witnesses.size() < kMaxWitnesses) witnesses.push_back(format_mat(m));
    }
  }
  return Verdict::mismatch;
}

}  // namespace

std::vector<StabilizerReport> verify_closed_form(const FieldCtx& base_proto,
                                                 const ExtDescriptor& desc,
                                                 const VerifyOptions& opt) {
  std::vector<StabilizerReport> out;
  for (int n = 1; n <= opt.n_max; ++n) {
    int N = opt.precision ? opt.precision : n + 2;
    FieldCtx work = stab_work_base(base_proto, N);
    ExtDescriptor dw = rebase_descriptor(desc, work);
    ExtCtx E = make_extension(work, dw);
    ClosedFormParams params = closed_form_params(E, n);
    for (const QuadraticPoint& q : quadratic_point_orbit_reps(E, n, opt.budgets)) {
      StabilizerReport rep;
      rep.ext_spec = format_ext_spec(desc);
      rep.point = vertex_label(q.rep);
      rep.n = n;
      rep.N = N;
      rep.level = q.level;
      rep.params = params;
      OracleSets scans = oracle_scan(q, N, opt.budgets);
      const CosetSet& oracle = scans.fixed;
      rep.oracle_size = oracle.mats.size();
      rep.orbit_size = scans.orbit.mats.size();
      rep.swap_size = rep.orbit_size - rep.oracle_size;

      CosetSet closed = closed_form_stabilizer(q, N, params, opt.parse, opt.mutation);
      rep.parse_choice = opt.parse;
      rep.closed_size = closed.mats.size();
      rep.verdict = compare_sets(oracle, closed, rep.witnesses);
      if (rep.verdict != Verdict::equal && opt.try_other_parse &&
          opt.mutation.target == Mutation::Target::none) {
        RangeParse other = opt.parse == RangeParse::union_of_difference
                               ? RangeParse::difference_of_union
                               : RangeParse::union_of_difference;
        CosetSet closed2 = closed_form_stabilizer(q, N, params, other, opt.mutation);
        std::vector<std::string> w2;
        if (compare_sets(oracle, closed2, w2) == Verdict::equal) {
          rep.parse_choice = other;
          rep.closed_size = closed2.mats.size();
          rep.verdict = Verdict::equal;
          rep.witnesses.clear();
        }
      }
      if (opt.check_tan)
        rep.tan_ok = torus_containment_check(q, N, n, opt.budgets, oracle);
      out.push_back(rep);
    }
  }
  return out;
}

BallReport verify_ball_stabilizers(const FieldCtx& base_proto, const ExtDescriptor& desc, int n,
                                   int N, const Budgets& budgets) {
  BallReport rep;
  rep.n = n;
  rep.N = N;

  FieldCtx work = stab_work_base(base_proto, N + 2);
  ExtDescriptor dw = rebase_descriptor(desc, work);
  ExtCtx E = make_extension(work, dw);
  const Field* f = work.get();
  int m = std::min(n / 2, f->e);
  int D = n * E->e_rel;

  // pointwise stabilizer of the radius-D ball at the root, inside K_{n-m}
  auto deepest = all_vertices_at_depth(E.get(), D);
  auto fixes_ball = [&](const Mat2& g) {
    for (const Vertex& v : deepest)
      if (!same_vertex(act(g, v), v)) return false;
    return true;
  };
  auto stab1 = sl2_filter(f, N, budgets, [&](const Mat2& g) {
    return subgroup_member(g, Subgroup::K, std::max(n - m, 0), N) && fixes_ball(g);
  });
  // the stabilizer is a union of cosets of the projective kernel, so compare
  // against the scalar-saturated displayed subgroup
  auto jn_plain = sl2_filter(f, N, budgets,
                             [&](const Mat2& g) { return subgroup_member(g, Subgroup::J, n, N); });
  auto jn = saturate_by_scalars(jn_plain, projective_kernel_scalars(f, N), N, std::max(n - m, 0));
  rep.center_size = stab1.size();
  rep.center_ok = stab1.size() == jn.size();
  if (rep.center_ok)
    for (size_t i = 0; i < stab1.size(); ++i)
      if (!mat_equal_at(stab1[i], jn[i], N)) rep.center_ok = false;
  if (!rep.center_ok && rep.witnesses.size() < 3) {
    for (const Mat2& g : stab1)
      if (!set_contains(jn, g, N) && rep.witnesses.size() < 3)
        rep.witnesses.push_back(format_mat(g));
    for (const Mat2& g : jn)
      if (!set_contains(stab1, g, N) && rep.witnesses.size() < 3)
        rep.witnesses.push_back(format_mat(g));
  }

  // off-center ball: center at the depth-1 vertex toward P's image, radius D+1
  int Noc = E->e_rel == 1 ? std::max(N, n + 2) : N;
  FieldCtx work2 = stab_work_base(base_proto, Noc + 2);
  ExtDescriptor dw2 = rebase_descriptor(desc, work2);
  ExtCtx E2 = make_extension(work2, dw2);
  const Field* f2 = work2.get();
  Vertex center = normalize_point(e_int(E2.get(), 1), e_int(E2.get(), 0), 1);
  std::vector<Vertex> ball;
  {
    std::set<VKey> seen;
    std::deque<std::pair<Vertex, int>> queue;
    queue.push_back({center, 0});
    seen.insert(vertex_key(center));
    while (!queue.empty()) {
      auto [v, dist] = queue.front();
      queue.pop_front();
      ball.push_back(v);
      if (dist == D + 1) continue;
      std::vector<Vertex> nbrs;
      if (v.depth > 0) nbrs.push_back(parent(v));
      if (v.depth + 1 <= E2->prec_e)
        for (const Vertex& c : children(v)) nbrs.push_back(c);
      for (const Vertex& w : nbrs)
        if (seen.insert(vertex_key(w)).second) queue.push_back({w, dist + 1});
    }
  }
  auto fixes_ball2 = [&](const Mat2& g) {
    for (const Vertex& v : ball)
      if (!same_vertex(act(g, v), v)) return false;
    return true;
  };
  auto stab2 = sl2_filter(f2, Noc, budgets, [&](const Mat2& g) {
    return subgroup_member(g, Subgroup::K, std::max(n - m, 0), Noc) && fixes_ball2(g);
  });
  rep.off_center_size = stab2.size();

  // conjugated images need one extra digit to be faithful mod K_Noc
  auto jn1_deep = sl2_filter(f2, Noc + 1, budgets, [&](const Mat2& g) {
    return subgroup_member(g, Subgroup::J, n + 1, Noc + 1);
  });
  std::vector<Mat2> pjn1 = conj_image_by_P(jn1_deep, Noc);

  std::vector<Mat2> expected;
  if (E2->kind == ExtKind::ramified) {
    expected = sl2_filter(f2, Noc, budgets, [&](const Mat2& g) {
      return subgroup_member(g, Subgroup::Jr, 2 * n + 1, Noc);
    });
    // display must agree with the generated subgroup J_{n+1} * P J_{n+1} P^{-1}
    auto jn1 = sl2_filter(f2, Noc, budgets, [&](const Mat2& g) {
      return subgroup_member(g, Subgroup::J, n + 1, Noc);
    });
    auto closure = generated_closure(jn1, pjn1, Noc, budgets.max_closure);
    rep.closure_matches_display = closure.size() == expected.size();
    if (rep.closure_matches_display)
      for (size_t i = 0; i < closure.size(); ++i)
        if (!mat_equal_at(closure[i], expected[i], Noc)) rep.closure_matches_display = false;
  } else {
    expected = pjn1;
  }
  expected =
      saturate_by_scalars(expected, projective_kernel_scalars(f2, Noc), Noc, std::max(n - m, 0));
  rep.off_center_ok = stab2.size() == expected.size();
  if (rep.off_center_ok)
    for (size_t i = 0; i < stab2.size(); ++i)
      if (!mat_equal_at(stab2[i], expected[i], Noc)) rep.off_center_ok = false;
  if (!rep.off_center_ok && rep.witnesses.size() < 3) {
    for (const Mat2& g : stab2)
      if (!set_contains(expected, g, Noc) && rep.witnesses.size() < 3)
        rep.witnesses.push_back(format_mat(g));
  }

  rep.holds = rep.center_ok && rep.off_center_ok && rep.closure_matches_display;
  return rep;
}

}  // namespace btstab
