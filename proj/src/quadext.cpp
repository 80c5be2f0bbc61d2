#include "btstab/quadext.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace btstab {

namespace {

void check_ctx(const ExtElem& a, const ExtElem& b) {
  if (a.ext != b.ext) throw CtxMismatch("extension elements from different contexts");
}

std::vector<RingElem> residues_or_zero(const Field* f, int level) {
  if (level <= 0) return {make_elem(f, 0)};
  return enumerate_residues(f, level);
}

int cap0_of(const Ext& E, int level) {
  return E.kind == ExtKind::ramified ? (level + 1) / 2 : level;
}
int cap1_of(const Ext& E, int level) {
  return E.kind == ExtKind::ramified ? level / 2 : level;
}

}  // namespace

ExtElem e_make(const Ext* e, const RingElem& x0, const RingElem& x1) {
  ExtElem z;
  z.ext = e;
  z.x0 = x0;
  z.x1 = x1;
  return z;
}

ExtElem e_from_base(const Ext* e, const RingElem& x0) {
  return e_make(e, x0, make_elem(e->base, 0));
}

ExtElem e_int(const Ext* e, std::int64_t v) { return e_from_base(e, make_elem(e->base, v)); }

ExtElem theta(const Ext* e) { return e_make(e, make_elem(e->base, 0), make_elem(e->base, 1)); }

ExtElem operator+(const ExtElem& a, const ExtElem& b) {
  check_ctx(a, b);
  return e_make(a.ext, a.x0 + b.x0, a.x1 + b.x1);
}

ExtElem operator-(const ExtElem& a, const ExtElem& b) {
  check_ctx(a, b);
  return e_make(a.ext, a.x0 - b.x0, a.x1 - b.x1);
}

ExtElem operator-(const ExtElem& a) { return e_make(a.ext, -a.x0, -a.x1); }

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
  check_ctx(a, b);
  // (x0 + x1 t)(y0 + y1 t) with t^2 = -A t - B
  RingElem cross = a.x1 * b.x1;
  RingElem r0 = a.x0 * b.x0 - cross * a.ext->B;
  RingElem r1 = a.x0 * b.x1 + a.x1 * b.x0 - cross * a.ext->A;
  return e_make(a.ext, r0, r1);
}

ExtElem scalar_mul(const RingElem& s, const ExtElem& a) {
  return e_make(a.ext, s * a.x0, s * a.x1);
}

ExtElem conj(const ExtElem& a) {
  return e_make(a.ext, a.x0 - a.ext->A * a.x1, -a.x1);
}

RingElem trace(const ExtElem& a) { return a.x0 + a.x0 - a.ext->A * a.x1; }

RingElem norm(const ExtElem& a) {
  ExtElem p = a * conj(a);
  assert(is_zero(p.x1));
  return p.x0;
}

int val_E(const ExtElem& a) {
  const Ext& E = *a.ext;
  int v0 = valuation(a.x0);
  int v1 = valuation(a.x1);
  int best;
  if (E.kind == ExtKind::ramified) {
    int c0 = v0 == kAbovePrecision ? kAbovePrecision : 2 * v0;
    int c1 = v1 == kAbovePrecision ? kAbovePrecision : 2 * v1 + 1;
    best = std::min(c0, c1);
  } else {
    best = std::min(v0, v1);
  }
  return best >= E.prec_e ? kAbovePrecision : best;
}

int unit_level_E(const ExtElem& a) {
  if (val_E(a) != 0) return kNotAUnit;
  int v = val_E(a - e_int(a.ext, 1));
  return v >= a.ext->prec_e ? a.ext->prec_e - 1 : v;
}

ExtElem e_inv(const ExtElem& a) {
  if (val_E(a) != 0) throw NotAUnit("e_inv of non-unit");
  return scalar_mul(inv(norm(a)), conj(a));
}

ExtElem e_div_piF(const ExtElem& a, int k) {
  return e_make(a.ext, div_pi_pow(a.x0, k), div_pi_pow(a.x1, k));
}

ExtKey e_key(const ExtElem& a, int level) {
  return {key_at(a.x0, cap0_of(*a.ext, level)), key_at(a.x1, cap1_of(*a.ext, level))};
}

ExtElem e_reduce(const ExtElem& a, int level) {
  return e_make(a.ext, reduce_to(a.x0, cap0_of(*a.ext, level)),
                reduce_to(a.x1, cap1_of(*a.ext, level)));
}

bool e_equal_at(const ExtElem& a, const ExtElem& b, int level) {
  check_ctx(a, b);
  return e_key(a, level) == e_key(b, level);
}

bool operator==(const ExtElem& a, const ExtElem& b) {
  check_ctx(a, b);
  return e_equal_at(a, b, a.ext->prec_e);
}

std::vector<ExtElem> enumerate_E(const Ext* e, int level) {
  if (level < 0 || level > e->prec_e) throw LevelOutOfRange("extension residue level out of range");
  auto r0 = residues_or_zero(e->base, cap0_of(*e, level));
  auto r1 = residues_or_zero(e->base, cap1_of(*e, level));
  std::vector<ExtElem> out;
  out.reserve(r0.size() * r1.size());
  for (const auto& b : r1)
    for (const auto& a : r0) out.push_back(e_make(e, a, b));
  return out;
}

std::string format_elem_E(const ExtElem& a) {
  std::ostringstream os;
  os << "(" << format_elem(a.x0) << ")+(" << format_elem(a.x1) << ")t";
  return os.str();
}

GaloisData galois_data(const ExtElem& z) { return {conj(z), trace(z), norm(z)}; }

int different_valuation(const ExtCtx& ext) {
  if (ext->kind == ExtKind::unramified) return 0;
  // delta(theta) = theta - conj(theta) = 2*theta + A
  ExtElem delta = e_make(ext.get(), ext->A, make_elem(ext->base, 2));
  return val_E(delta);
}

ExtCtx make_extension(const FieldCtx& base, const ExtDescriptor& desc) {
  if (desc.a.fld != base.get() || desc.b.fld != base.get())
    throw CtxMismatch("descriptor not over the given base field");
  auto E = std::make_shared<Ext>();
  E->base_holder = base;
  E->base = base.get();
  E->kind = desc.kind;
  E->a = desc.a;
  E->b = desc.b;
  if (desc.kind == ExtKind::ramified) {
    if (!is_unit(desc.b)) throw InvalidDescriptor("b must be a unit");
    int va = valuation(desc.a);
    if (va != kAbovePrecision && (va < 1 || va > base->e))
      throw InvalidDescriptor("need a = 0 or 1 <= val(a) <= e");
    E->A = desc.a;
    E->B = desc.b * uniformizer(base.get());
    E->d = va == kAbovePrecision ? kTraceZeroD : va;
    E->e_rel = 2;
    E->e_abs = 2 * base->e;
    E->f_abs = base->f;
    E->prec_e = 2 * base->prec;
  } else {
    // residue polynomial x^2 + a x + b must have no root in the residue field
    for (const RingElem& r : enumerate_residues(base.get(), 1)) {
      RingElem v = r * r + desc.a * r + desc.b;
      if (valuation(v) >= 1) throw InvalidDescriptor("residue polynomial splits");
    }
    E->A = desc.a;
    E->B = desc.b;
    E->d = 0;
    E->e_rel = 1;
    E->e_abs = base->e;
    E->f_abs = 2 * base->f;
    E->prec_e = base->prec;
  }
  ExtCtx ctx = E;
  E->diff_val = different_valuation(ctx);
  return ctx;
}

ExtDescriptor unramified_descriptor(const FieldCtx& base) {
  ExtDescriptor d;
  d.kind = ExtKind::unramified;
  d.a = make_elem(base, 1);
  // x^2 + x + 1 works over F_2; over F_4 take the basis generator as constant term
  d.b = base->f == 1 ? make_elem(base, 1) : make_elem(base, {0, 1});
  d.d = 0;
  d.diff_val = 0;
  return d;
}

namespace {

// Square classes of F^x, decided at the working precision.  Units are squares
// iff they are squares mod p^{2e+1}.
struct SquareClasses {
  FieldCtx work;
  int L = 0;
  std::set<ElemKey> squares;

  bool is_square_unit(const RingElem& u) const { return squares.count(key_at(u, L)) != 0; }

  bool equivalent(const RingElem& x, const RingElem& y) const {
    int vx = valuation(x), vy = valuation(y);
    if (vx == kAbovePrecision || vy == kAbovePrecision) throw Error("square class of 0");
    if ((vx & 1) != (vy & 1)) return false;
    RingElem p = x * y;
    return is_square_unit(div_pi_pow(p, vx + vy));
  }
};

SquareClasses build_square_classes(const FieldCtx& base) {
  SquareClasses S;
  S.work = clone_with_precision(base, 6 * base->e + 4);
  S.L = 2 * base->e + 1;
  for (const RingElem& u : enumerate_residues(S.work, S.L)) {
    if (!is_unit(u)) continue;
    S.squares.insert(key_at(u * u, S.L));
  }
  return S;
}

}  // namespace

std::vector<ExtDescriptor> classify_extensions(const FieldCtx& base) {
  const int e = base->e;
  if (base->prec < 2 * e + 2) throw PrecisionTooSmall("classification needs precision >= 2e+2");
  SquareClasses S = build_square_classes(base);
  const Field* W = S.work.get();
  const int L = S.L;

  std::vector<RingElem> unit_reps;
  std::set<ElemKey> seen;
  std::vector<RingElem> sq_elems;
  for (const ElemKey& k : S.squares) sq_elems.push_back(elem_from_key(W, k));
  for (const RingElem& u : enumerate_residues(S.work, L)) {
    if (!is_unit(u)) continue;
    if (seen.count(key_at(u, L))) continue;
    unit_reps.push_back(u);
    for (const RingElem& s : sq_elems) seen.insert(key_at(u * s, L));
  }

  struct Slot {
    RingElem rep;
    bool odd_val = false;
    bool assigned = false;
    RingElem a, b;
  };
  std::vector<Slot> slots;
  RingElem one = make_elem(W, 1);
  RingElem pi = uniformizer(W);
  for (const RingElem& u : unit_reps) {
    if (S.equivalent(u, one)) continue;  // trivial class: no extension
    slots.push_back({u, false, false, one, one});
  }
  for (const RingElem& u : unit_reps) slots.push_back({pi * u, true, false, one, one});

  // candidate Eisenstein data, scanned in key order so each class keeps the
  // least (a, b) found
  std::vector<RingElem> a_cands;
  a_cands.push_back(make_elem(W, 0));
  for (const RingElem& a : enumerate_residues(S.work, 2 * e + 2)) {
    int v = valuation(a);
    if (v >= 1 && v <= e) a_cands.push_back(a);
  }
  std::vector<RingElem> b_cands;
  for (const RingElem& b : enumerate_residues(S.work, L))
    if (is_unit(b)) b_cands.push_back(b);

  RingElem four = make_elem(W, 4);
  for (const RingElem& a : a_cands) {
    for (const RingElem& b : b_cands) {
      RingElem disc = a * a - four * b * pi;
      for (Slot& s : slots) {
        if (s.assigned) continue;
        if (S.equivalent(disc, s.rep)) {
          s.assigned = true;
          s.a = a;
          s.b = b;
        }
      }
    }
  }

  std::vector<ExtDescriptor> out;
  int unassigned_units = 0;
  for (const Slot& s : slots) {
    if (!s.assigned) {
      if (s.odd_val) throw Error("classification: odd-valuation class without Eisenstein data");
      ++unassigned_units;
      out.push_back(unramified_descriptor(base));
      continue;
    }
    ExtDescriptor d;
    d.kind = ExtKind::ramified;
    int va = valuation(s.a);
    d.d = va == kAbovePrecision ? kTraceZeroD : va;
    d.diff_val = va == kAbovePrecision ? 2 * e + 1 : 2 * va;
    d.a = elem_from_key(base.get(), key_at(s.a, std::min(base->prec, 2 * e + 2)));
    d.b = elem_from_key(base.get(), key_at(s.b, std::min(base->prec, L)));
    out.push_back(d);
  }
  if (unassigned_units != 1) throw Error("classification: expected exactly one unramified class");

  std::sort(out.begin(), out.end(), [](const ExtDescriptor& x, const ExtDescriptor& y) {
    if (x.diff_val != y.diff_val) return x.diff_val < y.diff_val;
    ElemKey xa = key_at(x.a, x.a.fld->prec), ya = key_at(y.a, y.a.fld->prec);
    if (xa != ya) return xa < ya;
    return key_at(x.b, x.b.fld->prec) < key_at(y.b, y.b.fld->prec);
  });

  // every declared different must agree with extension arithmetic
  for (const ExtDescriptor& d : out) {
    ExtCtx E = make_extension(base, d);
    if (E->diff_val != d.diff_val) throw Error("classification: different mismatch");
  }
  return out;
}

ExtDescriptor parse_ext_spec(const FieldCtx& base, const std::string& spec) {
  if (spec == "unram") return unramified_descriptor(base);
  if (spec.rfind("eis:", 0) != 0) throw Error("extension spec must be 'unram' or 'eis:<a>,<b>'");
  std::string body = spec.substr(4);
  size_t comma = body.find(',');
  if (comma == std::string::npos) throw Error("eis spec needs two coefficients");
  ExtDescriptor d;
  d.kind = ExtKind::ramified;
  d.a = parse_elem(base, body.substr(0, comma));
  d.b = parse_elem(base, body.substr(comma + 1));
  int va = valuation(d.a);
  d.d = va == kAbovePrecision ? kTraceZeroD : va;
  d.diff_val = va == kAbovePrecision ? 2 * base->e + 1 : 2 * va;
  return d;
}

std::string format_ext_spec(const ExtDescriptor& desc) {
  if (desc.kind == ExtKind::unramified) return "unram";
  // print at classification resolution so the string is precision-independent
  int e = desc.a.fld->e;
  RingElem a = reduce_to(desc.a, std::min(desc.a.fld->prec, 2 * e + 2));
  RingElem b = reduce_to(desc.b, std::min(desc.b.fld->prec, 2 * e + 1));
  return "eis:" + format_elem(a) + "," + format_elem(b);
}

LFReport norm_fiber_check(const ExtCtx& ext, int n, int working_level) {
  const Ext* E = ext.get();
  if (n < 1) throw Error("norm_fiber_check needs n >= 1");
  int kthresh = (working_level + E->e_rel - 1) / E->e_rel;
  if (working_level > E->prec_e || kthresh + 1 > E->base->prec || n + 1 > E->base->prec)
    throw PrecisionTooSmall("working level too deep for this context");

  LFReport rep;
  rep.n = n;
  if (E->kind == ExtKind::ramified) {
    rep.t = std::min(n, E->diff_val - 1);
    rep.exponent = std::max(0, 2 * n - rep.t);
  } else {
    rep.t = n;
    rep.exponent = n;
  }

  std::vector<ExtElem> units;
  for (const ExtElem& u : enumerate_E(E, working_level))
    if (val_E(u) == 0) units.push_back(u);

  RingElem oneF = make_elem(E->base, 1);
  std::set<ExtKey> lhs;
  std::vector<ExtElem> kern, filt;
  for (const ExtElem& u : units) {
    RingElem nu = norm(u);
    int lvl = valuation(nu - oneF);
    if (lvl >= n) lhs.insert(e_key(u, working_level));
    if (lvl >= kthresh) kern.push_back(u);
    if (unit_level_E(u) >= rep.exponent) filt.push_back(u);
  }
  std::set<ExtKey> rhs;
  for (const ExtElem& v : kern)
    for (const ExtElem& w : filt) rhs.insert(e_key(v * w, working_level));

  rep.lhs_size = lhs.size();
  rep.rhs_size = rhs.size();
  rep.holds = lhs == rhs;
  if (!rep.holds) {
    std::vector<ExtKey> diff;
    std::set_symmetric_difference(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                  std::back_inserter(diff));
    for (size_t i = 0; i < diff.size() && i < 3; ++i) {
      ExtElem w = e_make(E, elem_from_key(E->base, diff[i][0]), elem_from_key(E->base, diff[i][1]));
      rep.witnesses.push_back(format_elem_E(w));
    }
  }
  return rep;
}

KernelReport norm_kernel_check(const ExtCtx& ext, int max_n, int working_level) {
  const Ext* E = ext.get();
  if (E->kind != ExtKind::ramified)
    throw NotRamified("norm kernel checks need a ramified extension");
  if (working_level <= E->diff_val + 2 * max_n)
    throw PrecisionTooSmall("working level must exceed diff_val + 2*max_n");
  int kthresh = (working_level + 1) / 2;
  // the kernel at precision is N^1 U_E^{2k - diff_val + 1}; the filtration
  // levels probed must stay below that pollution line
  if (kthresh < E->diff_val + max_n)
    throw PrecisionTooSmall("working level too shallow: kernel surrogate impure");
  if (working_level > E->prec_e || kthresh + 1 > E->base->prec)
    throw PrecisionTooSmall("working level too deep for this context");

  KernelReport rep;
  rep.diff_val = E->diff_val;
  rep.max_n = max_n;

  RingElem oneF = make_elem(E->base, 1);
  std::vector<ExtElem> kern;
  for (const ExtElem& u : enumerate_E(E, working_level)) {
    if (val_E(u) != 0) continue;
    if (valuation(norm(u) - oneF) >= kthresh) kern.push_back(u);
  }

  rep.contained = true;
  std::uint64_t in_diff = 0;
  for (const ExtElem& u : kern) {
    int ul = unit_level_E(u);
    if (ul < E->diff_val - 1) {
      rep.contained = false;
      if (rep.witnesses.size() < 3) rep.witnesses.push_back(format_elem_E(u));
    }
    if (ul >= E->diff_val) ++in_diff;
  }
  rep.quotient_order = in_diff == 0 ? 0 : kern.size() / in_diff;

  rep.collapse_ok = true;
  for (int n = 1; n <= max_n; ++n) {
    std::uint64_t lo = 0, hi = 0;
    for (const ExtElem& u : kern) {
      int ul = unit_level_E(u);
      if (ul >= E->diff_val + 2 * n - 1) ++lo;
      if (ul >= E->diff_val + 2 * n) ++hi;
    }
    if (lo != hi) rep.collapse_ok = false;
  }
  rep.holds = rep.contained && rep.quotient_order == 2 && rep.collapse_ok;
  return rep;
}

}  // namespace btstab
