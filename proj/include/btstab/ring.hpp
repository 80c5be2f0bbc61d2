#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace btstab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotEisenstein : Error { using Error::Error; };
struct ResidueReducible : Error { using Error::Error; };
struct PrecisionTooSmall : Error { using Error::Error; };
struct CtxMismatch : Error { using Error::Error; };
struct NotAUnit : Error { using Error::Error; };
struct LevelOutOfRange : Error { using Error::Error; };

enum class FieldKind { trivial, unramified, eisenstein };

inline constexpr int kMaxDeg = 4;
inline constexpr int kGuardBits = 14;
// Valuation sentinel: the element is 0 mod p^prec, so its valuation is out of range.
inline constexpr int kAbovePrecision = 1 << 28;
inline constexpr int kNotAUnit = -1;

// A truncated local field O_F/p_F^N, F of residue characteristic 2.
// Elements are written over the power basis of the defining polynomial:
// eisenstein fields use the basis 1, w, ..., w^{e-1} with w the uniformizer,
// unramified ones 1, w, ..., w^{f-1} with w a residue generator, and the
// trivial kind is Z_2 itself.  Coefficients are residues mod 2^kbits with a
// guard margin above what precision N requires.
struct Field {
  FieldKind kind = FieldKind::trivial;
  int deg = 1;
  int e = 1;  // ramification index over Q_2
  int f = 1;  // residue degree over Q_2
  int prec = 1;
  int kbits = 0;
  std::uint64_t kmask = 0;
  std::array<std::uint64_t, kMaxDeg> poly{};  // low coefficients of the monic defining poly
  std::vector<std::int64_t> poly_src;
};

using FieldCtx = std::shared_ptr<const Field>;

struct RingElem {
  const Field* fld = nullptr;
  std::array<std::uint64_t, kMaxDeg> c{};
};

using ElemKey = std::array<std::uint64_t, kMaxDeg>;

FieldCtx make_base_field(FieldKind kind, const std::vector<std::int64_t>& poly_low_coeffs,
                         int precision);
// Same polynomial, different absolute precision.
FieldCtx clone_with_precision(const FieldCtx& ctx, int precision);

RingElem make_elem(const Field* f, std::int64_t v);
RingElem make_elem(const FieldCtx& f, std::int64_t v);
RingElem make_elem(const Field* f, std::initializer_list<std::int64_t> coeffs);
RingElem make_elem(const FieldCtx& f, std::initializer_list<std::int64_t> coeffs);
RingElem elem_from_key(const Field* f, const ElemKey& k);
RingElem uniformizer(const Field* f);

RingElem operator+(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a, const RingElem& b);
RingElem operator-(const RingElem& a);
RingElem operator*(const RingElem& a, const RingElem& b);
bool operator==(const RingElem& a, const RingElem& b);
inline bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

// Multiplicative inverse of a unit, exact at full stored width.  Throws NotAUnit.
RingElem inv(const RingElem& a);

int valuation(const RingElem& a);          // kAbovePrecision when a == 0 mod p^prec
int unit_level(const RingElem& a);         // largest n < prec with a in U^n; kNotAUnit if val > 0
bool is_unit(const RingElem& a);
bool is_zero(const RingElem& a);           // at precision

// Canonical residue of a mod p^level (0 <= level <= prec).
ElemKey key_at(const RingElem& a, int level);
RingElem reduce_to(const RingElem& a, int level);
bool equal_at(const RingElem& a, const RingElem& b, int level);

// One representative per class of O/p^n, deterministic order; n in [1, prec].
std::vector<RingElem> enumerate_residues(const FieldCtx& ctx, int n);
std::vector<RingElem> enumerate_residues(const Field* f, int n);
// |O/p^n| = 2^{f*n}
std::uint64_t residue_count(const Field* f, int n);

// Exact division by the uniformizer power; requires val(a) >= k.
RingElem div_pi_pow(const RingElem& a, int k);
RingElem mul_pi_pow(const RingElem& a, int k);

// Element literal grammar: "c0" or "c0+c1*w" (signed decimal residues).
RingElem parse_elem(const FieldCtx& ctx, const std::string& s);
RingElem parse_elem(const Field* f, const std::string& s);
std::string format_elem(const RingElem& a);

std::string field_kind_name(FieldKind k);

}  // namespace btstab
