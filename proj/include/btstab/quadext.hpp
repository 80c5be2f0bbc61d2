#pragma once

#include <iosfwd>
#include <optional>

#include "btstab/ring.hpp"

namespace btstab {

struct InvalidDescriptor : Error { using Error::Error; };
struct NotRamified : Error { using Error::Error; };

enum class ExtKind { unramified, ramified };

inline constexpr int kTraceZeroD = -1;

// One isomorphism class of quadratic E/F.  Ramified classes carry the minimal
// Eisenstein data x^2 + a x + b*pi_F; the unramified class carries the lifted
// Artin-Schreier polynomial x^2 + a x + b.
struct ExtDescriptor {
  ExtKind kind = ExtKind::ramified;
  RingElem a, b;
  int d = kTraceZeroD;   // val_F(a), or kTraceZeroD when a = 0
  int diff_val = 0;      // val_E of the different generator; 0 for unramified
};

struct Ext {
  FieldCtx base_holder;
  const Field* base = nullptr;
  ExtKind kind = ExtKind::ramified;
  RingElem A, B;  // theta^2 = -A*theta - B
  RingElem a, b;  // descriptor data
  int d = kTraceZeroD;
  int diff_val = 0;
  int e_rel = 2;   // e_{E/F}
  int e_abs = 2;   // e_E over Q_2
  int f_abs = 1;   // residue degree of E over Q_2
  int prec_e = 0;  // absolute precision in powers of pi_E
};

using ExtCtx = std::shared_ptr<const Ext>;

// Elements x0 + x1*theta over the base field.
struct ExtElem {
  const Ext* ext = nullptr;
  RingElem x0, x1;
};

using ExtKey = std::array<ElemKey, 2>;

std::vector<ExtDescriptor> classify_extensions(const FieldCtx& base);
ExtCtx make_extension(const FieldCtx& base, const ExtDescriptor& desc);
ExtDescriptor unramified_descriptor(const FieldCtx& base);

// CLI grammar: "unram" | "eis:<a>,<b>"
ExtDescriptor parse_ext_spec(const FieldCtx& base, const std::string& spec);
std::string format_ext_spec(const ExtDescriptor& desc);

ExtElem e_make(const Ext* e, const RingElem& x0, const RingElem& x1);
ExtElem e_from_base(const Ext* e, const RingElem& x0);
ExtElem e_int(const Ext* e, std::int64_t v);
ExtElem theta(const Ext* e);

ExtElem operator+(const ExtElem& a, const ExtElem& b);
ExtElem operator-(const ExtElem& a, const ExtElem& b);
ExtElem operator-(const ExtElem& a);
ExtElem operator*(const ExtElem& a, const ExtElem& b);
ExtElem scalar_mul(const RingElem& s, const ExtElem& a);
ExtElem conj(const ExtElem& a);
RingElem trace(const ExtElem& a);
RingElem norm(const ExtElem& a);
ExtElem e_inv(const ExtElem& a);
ExtElem e_div_piF(const ExtElem& a, int k);

int val_E(const ExtElem& a);        // kAbovePrecision when 0 mod p_E^prec_e
int unit_level_E(const ExtElem& a); // kNotAUnit for positive valuation
ExtKey e_key(const ExtElem& a, int level);
ExtElem e_reduce(const ExtElem& a, int level);
bool e_equal_at(const ExtElem& a, const ExtElem& b, int level);
bool operator==(const ExtElem& a, const ExtElem& b);
inline bool operator!=(const ExtElem& a, const ExtElem& b) { return !(a == b); }

std::vector<ExtElem> enumerate_E(const Ext* e, int level);
std::string format_elem_E(const ExtElem& a);

struct GaloisData {
  ExtElem conj;
  RingElem trace;
  RingElem norm;
};
GaloisData galois_data(const ExtElem& z);

// val_E(theta - conj(theta)) for ramified extensions, 0 for unramified.
int different_valuation(const ExtCtx& ext);

struct LFReport {
  int n = 0;
  int exponent = 0;  // 2n - t (ramified) or n (unramified)
  int t = 0;
  bool holds = false;
  std::size_t lhs_size = 0, rhs_size = 0;
  std::vector<std::string> witnesses;
};
// Checks N^{-1}(U_F^n) = N^1 U_E^{2n-t} (ramified) resp. N^1 U_E^n (unramified)
// as subsets of U_E / U_E^{working_level}.
LFReport norm_fiber_check(const ExtCtx& ext, int n, int working_level);

struct KernelReport {
  int diff_val = 0;
  int max_n = 0;
  bool contained = false;       // N^1 inside U_E^{diff_val - 1}
  std::uint64_t quotient_order = 0;  // order of N^1 / (N^1 cap U_E^{diff_val})
  bool collapse_ok = false;     // filtration collapse for 1 <= n <= max_n
  bool holds = false;
  std::vector<std::string> witnesses;
};
KernelReport norm_kernel_check(const ExtCtx& ext, int max_n, int working_level);

}  // namespace btstab
