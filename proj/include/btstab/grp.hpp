#pragma once

#include <functional>

#include "btstab/tree.hpp"

namespace btstab {

struct BudgetExceeded : Error { using Error::Error; };
struct RationalLine : Error { using Error::Error; };

struct Mat2 {
  RingElem a, b, c, d;
};

using MatKey = std::array<std::uint64_t, 4 * kMaxDeg>;

Mat2 mat_make(const RingElem& a, const RingElem& b, const RingElem& c, const RingElem& d);
Mat2 mat_id(const Field* f);
Mat2 operator*(const Mat2& x, const Mat2& y);
RingElem det(const Mat2& m);
RingElem mat_trace(const Mat2& m);
Mat2 mat_inv(const Mat2& m);  // unit determinant required
Mat2 mat_neg(const Mat2& m);
MatKey mat_key(const Mat2& m, int level);
Mat2 mat_reduce(const Mat2& m, int level);
bool mat_equal_at(const Mat2& x, const Mat2& y, int level);

Mat2 mat_P(const Field* f);   // ((0,1),(pi,0))
Mat2 mat_W(const Field* f);   // ((0,1),(-1,0))
Mat2 mat_PE(const ExtCtx& ext);  // pi*1 (unramified) or ((Tr theta, 1),(-N theta, 0))
Mat2 conj_by_P(const Mat2& m);   // P m P^{-1}; needs val(c) >= 1

// Faithful image of a subgroup under conjugation by P, reduced mod K_level.
// Conjugation divides one entry by pi, so the input must be enumerated one
// digit deeper than the output level.
std::vector<Mat2> conj_image_by_P(const std::vector<Mat2>& set_at_level_plus1, int level);

// Matrix-times-column action on tree vertices; entries are pushed into E.
Vertex act(const Mat2& g, const Vertex& v);

enum class Subgroup { K, I, J, Jr, B };
// Membership at index n.  I with odd index is closure-based: pass the closure
// set (sorted by mat_key at its level) computed via generated_closure.
bool subgroup_member(const Mat2& g, Subgroup s, int n, int level,
                     const std::vector<Mat2>* closure = nullptr);

struct Budgets {
  unsigned long long max_enum = 1ull << 22;
  std::size_t max_closure = 1u << 20;
  int jobs = 1;
};

unsigned long long count_sl2(const Field* f, int N);
// Streams SL2(O/p^N) exactly once each, in a fixed order.
void for_each_sl2(const Field* f, int N, const std::function<void(const Mat2&)>& fn);
// Partition for parallel scans: only first-column classes with index % nparts == part.
void for_each_sl2_part(const Field* f, int N, int part, int nparts,
                       const std::function<void(const Mat2&)>& fn);

std::vector<Mat2> sl2_filter(const Field* f, int N, const Budgets& budgets,
                             const std::function<bool(const Mat2&)>& pred);

// Subgroup generated by two inverse-closed generator sets, mod K_level.
std::vector<Mat2> generated_closure(const std::vector<Mat2>& gens_a,
                                    const std::vector<Mat2>& gens_b, int level,
                                    std::size_t budget);

bool set_contains(const std::vector<Mat2>& sorted_set, const Mat2& m, int level);
void sort_by_key(std::vector<Mat2>& mats, int level);

struct TraceZeroMat {
  Mat2 m;          // primitive integral trace-zero matrix
  RingElem disc;   // det(m); eigenvalues are +-lambda with lambda^2 = -disc
  ExtElem lambda;  // eigenvalue on the given line
};
// Trace-zero matrix over the base field whose eigenlines are the given line
// and its Galois conjugate.
TraceZeroMat trace_zero_for_point(const ExtElem& x, const ExtElem& y);
// The x^2 - u presentation: tau = ((0,1),(u,0)).
Mat2 tau_antidiagonal(const RingElem& u);

// The integral points of span(1, tau) with det = 1 mod p^n, as matrices
// mod K_N.  Includes combinations with pi^{-e} denominators when integral.
std::vector<Mat2> torus_members(const TraceZeroMat& tau, int n, int N);

Mat2 parse_mat(const FieldCtx& ctx, const std::string& s);
std::string format_mat(const Mat2& m);

}  // namespace btstab
