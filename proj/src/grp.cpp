#include "btstab/grp.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>
#include <sstream>

namespace btstab {

namespace {

int val_min(int a, int b) { return a < b ? a : b; }

}  // namespace

Mat2 mat_make(const RingElem& a, const RingElem& b, const RingElem& c, const RingElem& d) {
  return Mat2{a, b, c, d};
}

Mat2 mat_id(const Field* f) {
  RingElem z = make_elem(f, 0), o = make_elem(f, 1);
  return {o, z, z, o};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
          x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

RingElem det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

RingElem mat_trace(const Mat2& m) { return m.a + m.d; }

Mat2 mat_inv(const Mat2& m) {
  RingElem di = inv(det(m));
  return {di * m.d, -(di * m.b), -(di * m.c), di * m.a};
}

Mat2 mat_neg(const Mat2& m) { return {-m.a, -m.b, -m.c, -m.d}; }

MatKey mat_key(const Mat2& m, int level) {
  MatKey k{};
  ElemKey e[4] = {key_at(m.a, level), key_at(m.b, level), key_at(m.c, level),
                  key_at(m.d, level)};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < kMaxDeg; ++j) k[i * kMaxDeg + j] = e[i][j];
  return k;
}

Mat2 mat_reduce(const Mat2& m, int level) {
  return {reduce_to(m.a, level), reduce_to(m.b, level), reduce_to(m.c, level),
          reduce_to(m.d, level)};
}

bool mat_equal_at(const Mat2& x, const Mat2& y, int level) {
  return mat_key(x, level) == mat_key(y, level);
}

Mat2 mat_P(const Field* f) {
  return {make_elem(f, 0), make_elem(f, 1), uniformizer(f), make_elem(f, 0)};
}

Mat2 mat_W(const Field* f) {
  return {make_elem(f, 0), make_elem(f, 1), make_elem(f, -1), make_elem(f, 0)};
}

Mat2 mat_PE(const ExtCtx& ext) {
  const Field* f = ext->base;
  if (ext->kind == ExtKind::unramified) {
    RingElem pi = uniformizer(f), z = make_elem(f, 0);
    return {pi, z, z, pi};
  }
  // theta has trace -A and norm B
  return {-ext->A, make_elem(f, 1), -ext->B, make_elem(f, 0)};
}

Mat2 conj_by_P(const Mat2& m) {
  // P ((a,b),(c,d)) P^{-1} = ((d, c/pi),(pi b, a))
  return {m.d, div_pi_pow(m.c, 1), mul_pi_pow(m.b, 1), m.a};
}

std::vector<Mat2> conj_image_by_P(const std::vector<Mat2>& set_at_level_plus1, int level) {
  std::set<MatKey> seen;
  std::vector<Mat2> out;
  for (const Mat2& g : set_at_level_plus1) {
    Mat2 h = mat_reduce(conj_by_P(g), level);
    if (seen.insert(mat_key(h, level)).second) out.push_back(h);
  }
  sort_by_key(out, level);
  return out;
}

Vertex act(const Mat2& g, const Vertex& v) {
  const Ext* e = v.ext;
  if (g.a.fld != e->base) throw CtxMismatch("matrix over a different field");
  if (v.depth == 0) return v;  // integral unit-determinant matrices fix the root
  ExtElem A = e_from_base(e, g.a), B = e_from_base(e, g.b);
  ExtElem C = e_from_base(e, g.c), D = e_from_base(e, g.d);
  ExtElem x = v.unit_first ? e_int(e, 1) : v.z;
  ExtElem y = v.unit_first ? v.z : e_int(e, 1);
  return normalize_point(A * x + B * y, C * x + D * y, v.depth);
}

bool subgroup_member(const Mat2& g, Subgroup s, int n, int level,
                     const std::vector<Mat2>* closure) {
  const Field* f = g.a.fld;
  RingElem one = make_elem(f, 1);
  int va = valuation(g.a - one), vd = valuation(g.d - one);
  int vb = valuation(g.b), vc = valuation(g.c);
  switch (s) {
    case Subgroup::K:
      return va >= n && vd >= n && vb >= n && vc >= n;
    case Subgroup::B:
      return vc >= n;
    case Subgroup::J: {
      if (n == 0) return true;  // J_0 = K
      int m = val_min(n / 2, f->e);
      return va >= n - m && vd >= n - m && vb >= n && vc >= n;
    }
    case Subgroup::Jr: {
      // diagonal units sit at the depth of J_{ceil(n/2)}, so that the even
      // index is J_h cap P J_h P^{-1} and the odd one matches the generated
      // subgroup J_h * P J_h P^{-1}
      int hf = n / 2, hc = (n + 1) / 2;
      int m = val_min(hc / 2, f->e);
      return va >= hc - m && vd >= hc - m && vb >= hf && vc >= hf + 1;
    }
    case Subgroup::I: {
      if (n % 2 == 0) {
        int h = n / 2;
        return va >= h && vd >= h && vb >= h && vc >= h + 1;
      }
      if (!closure) throw Error("odd I membership needs a generated closure");
      return set_contains(*closure, g, level);
    }
  }
  return false;
}

unsigned long long count_sl2(const Field* f, int N) {
  // q^{3N} - q^{3N-2} with q the residue field size
  unsigned long long q = 1ull << f->f;
  unsigned long long hi = 1, lo = 1;
  for (int i = 0; i < 3 * N; ++i) hi *= q;
  lo = hi / (q * q);
  return hi - lo;
}

void for_each_sl2_part(const Field* f, int N, int part, int nparts,
                       const std::function<void(const Mat2&)>& fn) {
  auto res = enumerate_residues(f, N);
  long long idx = 0;
  for (const RingElem& a : res) {
    bool a_unit = is_unit(a);
    for (const RingElem& c : res) {
      bool c_unit = is_unit(c);
      if (!a_unit && !c_unit) continue;  // first column must be unimodular
      if (idx++ % nparts != part) continue;
      RingElem b0 = make_elem(f, 0), d0 = make_elem(f, 0);
      if (a_unit) {
        d0 = inv(a);
      } else {
        b0 = -inv(c);
      }
      for (const RingElem& t : res) {
        Mat2 m{reduce_to(a, N), reduce_to(b0 + t * a, N), reduce_to(c, N),
               reduce_to(d0 + t * c, N)};
        fn(m);
      }
    }
  }
}

void for_each_sl2(const Field* f, int N, const std::function<void(const Mat2&)>& fn) {
  for_each_sl2_part(f, N, 0, 1, fn);
}

std::vector<Mat2> sl2_filter(const Field* f, int N, const Budgets& budgets,
                             const std::function<bool(const Mat2&)>& pred) {
  if (count_sl2(f, N) > budgets.max_enum) throw BudgetExceeded("SL2 enumeration too large");
  std::vector<Mat2> out;
  for_each_sl2(f, N, [&](const Mat2& m) {
    if (pred(m)) out.push_back(m);
  });
  sort_by_key(out, N);
  return out;
}

void sort_by_key(std::vector<Mat2>& mats, int level) {
  std::sort(mats.begin(), mats.end(), [level](const Mat2& x, const Mat2& y) {
    return mat_key(x, level) < mat_key(y, level);
  });
}

bool set_contains(const std::vector<Mat2>& sorted_set, const Mat2& m, int level) {
  MatKey k = mat_key(m, level);
  auto it = std::lower_bound(sorted_set.begin(), sorted_set.end(), k,
                             [level](const Mat2& x, const MatKey& key) {
                               return mat_key(x, level) < key;
                             });
  return it != sorted_set.end() && mat_key(*it, level) == k;
}

std::vector<Mat2> generated_closure(const std::vector<Mat2>& gens_a,
                                    const std::vector<Mat2>& gens_b, int level,
                                    std::size_t budget) {
  std::vector<Mat2> gens;
  gens.reserve(gens_a.size() + gens_b.size());
  for (const Mat2& g : gens_a) gens.push_back(mat_reduce(g, level));
  for (const Mat2& g : gens_b) gens.push_back(mat_reduce(g, level));
  if (gens.empty()) return {};

  std::set<MatKey> seen;
  std::deque<Mat2> queue;
  std::vector<Mat2> out;
  Mat2 id = mat_id(gens[0].a.fld);
  seen.insert(mat_key(id, level));
  queue.push_back(id);
  out.push_back(id);
  while (!queue.empty()) {
    Mat2 m = queue.front();
    queue.pop_front();
    for (const Mat2& g : gens) {
      Mat2 p = mat_reduce(m * g, level);
      if (seen.insert(mat_key(p, level)).second) {
        if (out.size() >= budget) throw BudgetExceeded("closure budget exceeded");
        queue.push_back(p);
        out.push_back(p);
      }
    }
  }
  sort_by_key(out, level);
  return out;
}

TraceZeroMat trace_zero_for_point(const ExtElem& x, const ExtElem& y) {
  const Ext* E = x.ext;
  const Field* f = E->base;
  ExtElem w = e_int(E, 0);
  bool first_unit;
  if (val_E(x) == 0) {
    first_unit = true;
    w = e_inv(x) * y;
  } else if (val_E(y) == 0) {
    first_unit = false;
    w = x * e_inv(y);
  } else {
    throw NotUnimodular("line coordinates not unimodular");
  }
  if (is_zero(w.x1)) throw RationalLine("line is defined over the base field");

  RingElem tr = trace(w), nm = norm(w);
  Mat2 raw;
  if (first_unit) {
    // eigenvector (1, w), eigenvalue w - conj(w)
    raw = {-tr, make_elem(f, 2), -(make_elem(f, 2) * nm), tr};
  } else {
    // eigenvector (w, 1)
    raw = {tr, -(make_elem(f, 2) * nm), make_elem(f, 2), -tr};
  }
  int content = kAbovePrecision;
  for (const RingElem* e : {&raw.a, &raw.b, &raw.c, &raw.d})
    content = val_min(content, valuation(*e));
  if (content >= f->prec) throw RationalLine("trace-zero matrix vanishes at precision");

  TraceZeroMat out;
  out.m = {div_pi_pow(raw.a, content), div_pi_pow(raw.b, content),
           div_pi_pow(raw.c, content), div_pi_pow(raw.d, content)};
  out.disc = det(out.m);
  out.lambda = e_div_piF(w - conj(w), content);
  return out;
}

Mat2 tau_antidiagonal(const RingElem& u) {
  const Field* f = u.fld;
  return {make_elem(f, 0), make_elem(f, 1), u, make_elem(f, 0)};
}

std::vector<Mat2> torus_members(const TraceZeroMat& tau, int n, int N) {
  const Field* f = tau.m.a.fld;
  int e = f->e;
  if (f->prec < N + 2 * e + 1) throw PrecisionTooSmall("torus enumeration needs more headroom");
  RingElem pi2e = mul_pi_pow(make_elem(f, 1), 2 * e);
  auto res = enumerate_residues(f, N + 2 * e);
  std::set<MatKey> seen;
  std::vector<Mat2> out;
  for (const RingElem& X : res) {
    for (const RingElem& Y : res) {
      // candidate (X*1 + Y*tau)/pi^e
      RingElem da = X + Y * tau.m.a, db = Y * tau.m.b;
      RingElem dc = Y * tau.m.c, dd = X + Y * tau.m.d;
      bool integral = true;
      for (const RingElem* t : {&da, &db, &dc, &dd})
        if (valuation(*t) < e) integral = false;
      if (!integral) continue;
      RingElem dt = X * X + Y * Y * tau.disc;
      if (valuation(dt) != 2 * e) continue;  // unit determinant after scaling
      if (valuation(dt - pi2e) < n + 2 * e) continue;  // det = 1 mod p^n
      Mat2 m{div_pi_pow(da, e), div_pi_pow(db, e), div_pi_pow(dc, e), div_pi_pow(dd, e)};
      m = mat_reduce(m, N);
      if (seen.insert(mat_key(m, N)).second) out.push_back(m);
    }
  }
  sort_by_key(out, N);
  return out;
}

Mat2 parse_mat(const FieldCtx& ctx, const std::string& s) {
  // [[a,b],[c,d]] with element literals
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == '[' || ch == ']' || ch == ' ') continue;
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  if (parts.size() != 4) throw Error("matrix literal needs four entries");
  return {parse_elem(ctx, parts[0]), parse_elem(ctx, parts[1]), parse_elem(ctx, parts[2]),
          parse_elem(ctx, parts[3])};
}

std::string format_mat(const Mat2& m) {
  std::ostringstream os;
  os << "[[" << format_elem(m.a) << "," << format_elem(m.b) << "],[" << format_elem(m.c)
     << "," << format_elem(m.d) << "]]";
  return os.str();
}

}  // namespace btstab
