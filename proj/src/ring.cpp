#include "btstab/ring.hpp"

#include <bit>
#include <cassert>
#include <sstream>

namespace btstab {

namespace {

std::uint64_t mask_bits(int b) {
  if (b <= 0) return 0;
  if (b >= 64) return ~std::uint64_t(0);
  return (std::uint64_t(1) << b) - 1;
}

// Inverse of an odd residue mod 2^bits.
std::uint64_t scalar_inv_odd(std::uint64_t x, std::uint64_t mask) {
  std::uint64_t y = x;  // 3 correct low bits to start
  for (int i = 0; i < 6; ++i) y *= 2 - x * y;
  return y & mask;
}

void check_ctx(const RingElem& a, const RingElem& b) {
  if (a.fld != b.fld) throw CtxMismatch("ring elements from different contexts");
}

// Bits kept for coefficient i when reducing mod p^level.
int coeff_cap_bits(const Field& F, int level, int i) {
  if (level <= 0) return 0;
  if (F.kind == FieldKind::eisenstein) {
    if (level <= i) return 0;
    return (level - i + F.e - 1) / F.e;
  }
  return level;
}

}  // namespace

FieldCtx make_base_field(FieldKind kind, const std::vector<std::int64_t>& poly, int precision) {
  if (precision < 1) throw PrecisionTooSmall("precision must be >= 1");
  auto F = std::make_shared<Field>();
  F->kind = kind;
  F->prec = precision;
  F->poly_src = poly;
  switch (kind) {
    case FieldKind::trivial:
      F->deg = F->e = F->f = 1;
      break;
    case FieldKind::unramified: {
      int d = static_cast<int>(poly.size());
      if (d < 2 || d > 3) throw ResidueReducible("unramified degree must be 2 or 3");
      // residue poly must have no root in F_2 (sufficient for deg <= 3)
      std::uint64_t at0 = std::uint64_t(poly[0]) & 1;
      std::uint64_t at1 = 1;
      for (std::int64_t p : poly) at1 += std::uint64_t(p);
      if (at0 == 0 || (at1 & 1) == 0) throw ResidueReducible("residue polynomial has a root");
      F->deg = d;
      F->e = 1;
      F->f = d;
      break;
    }
    case FieldKind::eisenstein: {
      int d = static_cast<int>(poly.size());
      if (d < 2 || d > kMaxDeg) throw NotEisenstein("eisenstein degree must be in [2,4]");
      if ((poly[0] & 1) != 0 || (poly[0] & 2) == 0)
        throw NotEisenstein("constant term must have valuation exactly 1");
      for (int i = 1; i < d; ++i)
        if ((poly[i] & 1) != 0) throw NotEisenstein("coefficient with valuation 0");
      F->deg = d;
      F->e = d;
      F->f = 1;
      break;
    }
  }
  F->kbits = (precision + F->e - 1) / F->e + kGuardBits;
  if (F->kbits > 62) throw PrecisionTooSmall("precision exceeds the supported coefficient width");
  F->kmask = mask_bits(F->kbits);
  for (int i = 0; i < F->deg && i < static_cast<int>(poly.size()); ++i)
    F->poly[i] = std::uint64_t(poly[i]) & F->kmask;
  return F;
}

FieldCtx clone_with_precision(const FieldCtx& ctx, int precision) {
  return make_base_field(ctx->kind, ctx->poly_src, precision);
}

RingElem make_elem(const Field* f, std::int64_t v) {
  RingElem r;
  r.fld = f;
  r.c[0] = std::uint64_t(v) & f->kmask;
  return r;
}

RingElem make_elem(const FieldCtx& f, std::int64_t v) { return make_elem(f.get(), v); }

RingElem make_elem(const Field* f, std::initializer_list<std::int64_t> coeffs) {
  RingElem r;
  r.fld = f;
  int i = 0;
  for (std::int64_t v : coeffs) {
    if (i >= f->deg) throw Error("too many coefficients for this field");
    r.c[i++] = std::uint64_t(v) & f->kmask;
  }
  return r;
}

RingElem make_elem(const FieldCtx& f, std::initializer_list<std::int64_t> coeffs) {
  return make_elem(f.get(), coeffs);
}

RingElem elem_from_key(const Field* f, const ElemKey& k) {
  RingElem r;
  r.fld = f;
  r.c = k;
  return r;
}

RingElem uniformizer(const Field* f) {
  if (f->kind == FieldKind::eisenstein) return make_elem(f, {0, 1});
  return make_elem(f, 2);
}

RingElem operator+(const RingElem& a, const RingElem& b) {
  check_ctx(a, b);
  RingElem r;
  r.fld = a.fld;
  for (int i = 0; i < a.fld->deg; ++i) r.c[i] = (a.c[i] + b.c[i]) & a.fld->kmask;
  return r;
}

RingElem operator-(const RingElem& a, const RingElem& b) {
  check_ctx(a, b);
  RingElem r;
  r.fld = a.fld;
  for (int i = 0; i < a.fld->deg; ++i) r.c[i] = (a.c[i] - b.c[i]) & a.fld->kmask;
  return r;
}

RingElem operator-(const RingElem& a) {
  RingElem r;
  r.fld = a.fld;
  for (int i = 0; i < a.fld->deg; ++i) r.c[i] = (0 - a.c[i]) & a.fld->kmask;
  return r;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  check_ctx(a, b);
  const Field& F = *a.fld;
  const int d = F.deg;
  std::array<std::uint64_t, 2 * kMaxDeg> conv{};
  for (int i = 0; i < d; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < d; ++j) conv[i + j] += a.c[i] * b.c[j];
  }
  // monic reduction x^d = -poly
  for (int j = 2 * d - 2; j >= d; --j) {
    std::uint64_t t = conv[j] & F.kmask;
    conv[j] = 0;
    if (t == 0) continue;
    for (int i = 0; i < d; ++i) conv[j - d + i] -= t * F.poly[i];
  }
  RingElem r;
  r.fld = a.fld;
  for (int i = 0; i < d; ++i) r.c[i] = conv[i] & F.kmask;
  return r;
}

int valuation(const RingElem& a) {
  const Field& F = *a.fld;
  int best = kAbovePrecision;
  for (int i = 0; i < F.deg; ++i) {
    std::uint64_t r = a.c[i] & mask_bits(coeff_cap_bits(F, F.prec, i));
    if (r == 0) continue;
    int v2 = std::countr_zero(r);
    int contrib = (F.kind == FieldKind::eisenstein) ? F.e * v2 + i : v2;
    if (contrib < best) best = contrib;
  }
  return best >= F.prec ? kAbovePrecision : best;
}

bool is_unit(const RingElem& a) { return valuation(a) == 0; }

bool is_zero(const RingElem& a) { return valuation(a) == kAbovePrecision; }

int unit_level(const RingElem& a) {
  if (!is_unit(a)) return kNotAUnit;
  int v = valuation(a - make_elem(a.fld, 1));
  return v >= a.fld->prec ? a.fld->prec - 1 : v;
}

RingElem inv(const RingElem& a) {
  if (!is_unit(a)) throw NotAUnit("inv of an element with positive valuation");
  const Field& F = *a.fld;
  RingElem z;
  if (F.kind == FieldKind::unramified) {
    // find the residue-field inverse by exhaustion over residue representatives
    bool found = false;
    for (const RingElem& r : enumerate_residues(a.fld, 1)) {
      RingElem t = a * r - make_elem(a.fld, 1);
      bool ok = true;
      for (int i = 0; i < F.deg; ++i)
        if (t.c[i] & 1) ok = false;
      if (ok) {
        z = r;
        found = true;
        break;
      }
    }
    if (!found) throw Error("residue inverse not found");
  } else {
    z = make_elem(a.fld, std::int64_t(scalar_inv_odd(a.c[0], F.kmask)));
  }
  RingElem two = make_elem(a.fld, 2);
  for (int it = 0; it < 8; ++it) z = z * (two - a * z);
  assert(equal_at(a * z, make_elem(a.fld, 1), F.prec));
  return z;
}

ElemKey key_at(const RingElem& a, int level) {
  const Field& F = *a.fld;
  ElemKey k{};
  for (int i = 0; i < F.deg; ++i) k[i] = a.c[i] & mask_bits(coeff_cap_bits(F, level, i));
  return k;
}

RingElem reduce_to(const RingElem& a, int level) { return elem_from_key(a.fld, key_at(a, level)); }

bool equal_at(const RingElem& a, const RingElem& b, int level) {
  check_ctx(a, b);
  return key_at(a, level) == key_at(b, level);
}

bool operator==(const RingElem& a, const RingElem& b) {
  check_ctx(a, b);
  return key_at(a, a.fld->prec) == key_at(b, b.fld->prec);
}

std::uint64_t residue_count(const Field* f, int n) {
  return std::uint64_t(1) << (f->f * n);
}

std::vector<RingElem> enumerate_residues(const Field* f, int n) {
  if (n < 1 || n > f->prec) throw LevelOutOfRange("residue level out of range");
  const Field& F = *f;
  std::array<int, kMaxDeg> caps{};
  for (int i = 0; i < F.deg; ++i) caps[i] = coeff_cap_bits(F, n, i);
  std::vector<RingElem> out;
  out.reserve(residue_count(f, n));
  RingElem cur;
  cur.fld = f;
  while (true) {
    out.push_back(cur);
    int i = 0;
    for (; i < F.deg; ++i) {
      cur.c[i] = (cur.c[i] + 1) & mask_bits(caps[i]);
      if (cur.c[i] != 0) break;
    }
    if (i == F.deg) break;
  }
  return out;
}

std::vector<RingElem> enumerate_residues(const FieldCtx& ctx, int n) {
  return enumerate_residues(ctx.get(), n);
}

RingElem mul_pi_pow(const RingElem& a, int k) {
  RingElem r = a;
  RingElem pi = uniformizer(a.fld);
  for (int i = 0; i < k; ++i) r = r * pi;
  return r;
}

RingElem div_pi_pow(const RingElem& a, int k) {
  const Field& F = *a.fld;
  int v = valuation(a);
  if (v != kAbovePrecision && v < k) throw Error("div_pi_pow: valuation too small");
  RingElem r = a;
  if (F.kind != FieldKind::eisenstein) {
    for (int s = 0; s < k; ++s) {
      for (int i = 0; i < F.deg; ++i) {
        assert((r.c[i] & 1) == 0);
        r.c[i] >>= 1;
      }
    }
    return r;
  }
  // one uniformizer division per step: (c0 + pi*rest)/pi = rest + (c0/2)*(-u^{-1})*wpart
  // where poly(0) = 2u and pi*wpart = -poly(0).
  std::uint64_t u = F.poly[0] >> 1;
  std::uint64_t m = (0 - scalar_inv_odd(u, F.kmask)) & F.kmask;
  RingElem w;
  w.fld = a.fld;
  for (int i = 1; i < F.deg; ++i) w.c[i - 1] = F.poly[i];
  w.c[F.deg - 1] = 1;
  for (int s = 0; s < k; ++s) {
    std::uint64_t c0 = r.c[0];
    assert((c0 & 1) == 0);
    for (int i = 0; i + 1 < F.deg; ++i) r.c[i] = r.c[i + 1];
    r.c[F.deg - 1] = 0;
    std::uint64_t scale = ((c0 >> 1) * m) & F.kmask;
    for (int i = 0; i < F.deg; ++i) r.c[i] = (r.c[i] + scale * w.c[i]) & F.kmask;
  }
  return r;
}

RingElem parse_elem(const Field* f, const std::string& s) {
  // "c0", "c1*w", "c0+c1*w", "c0-c1*w"; coefficients are signed decimals
  auto parse_int = [](const std::string& t) {
    size_t pos = 0;
    long long v = std::stoll(t, &pos);
    if (pos != t.size()) throw Error("bad element literal: " + t);
    return v;
  };
  std::string body = s;
  std::int64_t c0 = 0, c1 = 0;
  size_t star = body.find("*w");
  if (star == std::string::npos) {
    if (body == "w") {
      c1 = 1;
    } else {
      c0 = parse_int(body);
    }
  } else {
    // split at the sign separating c0 from the c1 term, if any
    size_t split = std::string::npos;
    for (size_t i = 1; i < star; ++i) {
      if (body[i] == '+' || body[i] == '-') split = i;
    }
    std::string head = (split == std::string::npos) ? "" : body.substr(0, split);
    std::string tail = body.substr(split == std::string::npos ? 0 : split, star - (split == std::string::npos ? 0 : split));
    if (!head.empty()) c0 = parse_int(head);
    if (tail == "+" || tail.empty()) c1 = 1;
    else if (tail == "-") c1 = -1;
    else c1 = parse_int(tail);
    if (body.size() != star + 2) throw Error("bad element literal: " + s);
  }
  if (c1 != 0 && f->deg < 2) throw Error("w-coefficient in a degree-1 field");
  RingElem r = make_elem(f, c0);
  if (f->deg >= 2) r.c[1] = std::uint64_t(c1) & f->kmask;
  return r;
}

RingElem parse_elem(const FieldCtx& ctx, const std::string& s) { return parse_elem(ctx.get(), s); }

std::string format_elem(const RingElem& a) {
  ElemKey k = key_at(a, a.fld->prec);
  if (a.fld->deg == 1) return std::to_string(k[0]);
  std::ostringstream os;
  if (k[1] == 0) {
    os << k[0];
  } else {
    os << k[0] << "+" << k[1] << "*w";
  }
  // degrees above 2 do not occur in element literals at desk scale
  return os.str();
}

std::string field_kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::trivial: return "trivial";
    case FieldKind::unramified: return "unramified";
    case FieldKind::eisenstein: return "eisenstein";
  }
  return "?";
}

}  // namespace btstab
