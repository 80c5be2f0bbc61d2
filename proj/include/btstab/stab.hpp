#pragma once

#include "btstab/grp.hpp"

namespace btstab {

struct NotNormalized : Error { using Error::Error; };

// Parameters of the closed-form stabilizer description at level n.
struct ClosedFormParams {
  int n = 1;
  int m = 0;     // min(floor(n/2), e_F)
  int t = 0;     // min(n, diff_val - 1), ramified only
  int eps = 0;   // e_{E/F} - 1
  int del = 0;   // 0 iff a trace-zero uniformizer exists
  bool unramified = false;
};
ClosedFormParams closed_form_params(const ExtCtx& ext, int n);

// The two readings of "{1} u U^a \ U^b" (and its y-analogue).
enum class RangeParse { union_of_difference, difference_of_union };

struct Mutation {
  enum class Target { none, m, t, eps, del, xlow, ylow };
  Target target = Target::none;
  int delta = 0;
};

struct CosetSet {
  int level = 0;
  std::vector<Mat2> mats;  // sorted by mat_key at level
};
bool coset_equal(const CosetSet& a, const CosetSet& b);
bool coset_subset(const CosetSet& a, const CosetSet& b);
CosetSet conjugated_set(const Mat2& g, const CosetSet& s);

// All of SL2(O/p^N) that stabilizes the Galois orbit of the point.
CosetSet brute_force_stabilizer(const QuadraticPoint& q, int N, const Budgets& budgets);

// One scan, both readings: the orbit stabilizer and the subgroup fixing the
// representative vertex itself.  They differ by a swap coset exactly when the
// two conjugate vertices are distinct and some determinant-one matrix
// exchanges them (equivalently, -1 is a norm from E).
struct OracleSets {
  CosetSet orbit;
  CosetSet fixed;
};
OracleSets oracle_scan(const QuadraticPoint& q, int N, const Budgets& budgets);

// The product set T . J . S of the closed-form description, mod K_N.
// The point must be in normalized pure position: rep = (1, w) with w having
// no base-field part and level equal to its depth.
CosetSet closed_form_stabilizer(const QuadraticPoint& q, int N, const ClosedFormParams& p,
                                RangeParse parse = RangeParse::union_of_difference,
                                const Mutation& mut = {});

// Containment oracle <= T_{alpha,n} . J' of the one-sided lemma.
bool torus_containment_check(const QuadraticPoint& q, int N, int n, const Budgets& budgets,
                             const CosetSet& oracle);

enum class Verdict { equal, closed_subset_strict, mismatch };
std::string verdict_name(Verdict v);
std::string parse_name(RangeParse p);

struct StabilizerReport {
  std::string ext_spec;
  std::string point;
  int n = 0;
  int N = 0;
  int level = 0;
  ClosedFormParams params;
  RangeParse parse_choice = RangeParse::union_of_difference;
  std::size_t oracle_size = 0;       // vertex-fixing part, the theorem's object
  std::size_t orbit_size = 0;        // orbit stabilizer (adds the swap coset)
  std::size_t swap_size = 0;         // orbit_size - oracle_size
  std::size_t closed_size = 0;
  Verdict verdict = Verdict::mismatch;
  bool tan_ok = false;
  std::vector<std::string> witnesses;
};

struct VerifyOptions {
  int n_max = 2;
  int precision = 0;  // 0 = per-level default n + 2
  Budgets budgets;
  RangeParse parse = RangeParse::union_of_difference;
  Mutation mutation;
  bool check_tan = true;
  bool try_other_parse = true;
};

// Normalized orbit representatives of quadratic points at theorem level n
// (tree depth n*e_{E/F}), one per SL2(O)-orbit.
std::vector<QuadraticPoint> quadratic_point_orbit_reps(const ExtCtx& ext, int n,
                                                       const Budgets& budgets);

// Rebuilds a descriptor over a context with different precision.
ExtDescriptor rebase_descriptor(const ExtDescriptor& desc, const FieldCtx& newbase);
// Working context with headroom for torus grids and content divisions.
FieldCtx stab_work_base(const FieldCtx& base_proto, int N);

std::vector<StabilizerReport> verify_closed_form(const FieldCtx& base_proto,
                                                 const ExtDescriptor& desc,
                                                 const VerifyOptions& opt);

struct BallReport {
  int n = 0;
  int N = 0;
  bool center_ok = false;       // pointwise stabilizer of the root ball == J_n
  bool off_center_ok = false;   // off-center ball == Jr_{2n+1} resp. conjugated J_{n+1}
  bool closure_matches_display = true;  // ramified: Jr display == generated closure
  std::size_t center_size = 0, off_center_size = 0;
  std::vector<std::string> witnesses;
  bool holds = false;
};
BallReport verify_ball_stabilizers(const FieldCtx& base_proto, const ExtDescriptor& desc, int n,
                                   int N, const Budgets& budgets);

}  // namespace btstab
