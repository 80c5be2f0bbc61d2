#include <doctest.h>

#include <algorithm>

#include "btstab/quadext.hpp"

using namespace btstab;

TEST_SUITE_BEGIN("quadext");

static FieldCtx q2(int prec) { return make_base_field(FieldKind::trivial, {}, prec); }

// E = Q_2(sqrt 2) via x^2 - 2
static ExtCtx sqrt2_ext(const FieldCtx& base) {
  ExtDescriptor d = parse_ext_spec(base, "eis:0,-1");
  return make_extension(base, d);
}
// E = Q_2(i) via x^2 + 2x + 2 (theta = -1 + i)
static ExtCtx gauss_ext(const FieldCtx& base) {
  ExtDescriptor d = parse_ext_spec(base, "eis:2,1");
  return make_extension(base, d);
}

TEST_CASE("census of quadratic extensions of Q2") {
  auto base = q2(6);
  auto classes = classify_extensions(base);
  REQUIRE(classes.size() == 7);
  int unram = 0, d2 = 0, d3 = 0;
  for (const auto& c : classes) {
    if (c.kind == ExtKind::unramified) {
      ++unram;
      CHECK(c.diff_val == 0);
    } else if (c.diff_val == 2) {
      ++d2;
      CHECK(c.d == 1);
    } else if (c.diff_val == 3) {
      ++d3;
      CHECK(c.d == kTraceZeroD);
    }
  }
  CHECK(unram == 1);
  CHECK(d2 == 2);
  CHECK(d3 == 4);
  // each declared different recomputed in extension arithmetic
  for (const auto& c : classes) {
    ExtCtx E = make_extension(base, c);
    CHECK(different_valuation(E) == c.diff_val);
  }
}

TEST_CASE("census over a ramified base") {
  auto base = make_base_field(FieldKind::eisenstein, {-2, 0}, 8);
  auto classes = classify_extensions(base);
  CHECK(classes.size() == 15);  // |F^x / (F^x)^2| - 1 for [F:Q2] = 2
  int unram = 0;
  for (const auto& c : classes)
    if (c.kind == ExtKind::unramified) ++unram;
  CHECK(unram == 1);
}

TEST_CASE("make_extension") {
  auto base = q2(6);
  auto E = sqrt2_ext(base);
  CHECK(E->e_rel == 2);
  CHECK(E->e_abs == 2);
  CHECK(E->prec_e == 12);

  auto U = make_extension(base, unramified_descriptor(base));
  CHECK(U->e_rel == 1);
  CHECK(U->f_abs == 2);

  ExtDescriptor bad;
  bad.kind = ExtKind::ramified;
  bad.a = make_elem(base, -3);
  bad.b = make_elem(base, 1);
  CHECK_THROWS_AS(make_extension(base, bad), InvalidDescriptor);
}

TEST_CASE("galois data over Q2(sqrt 2)") {
  auto base = q2(6);
  auto E = sqrt2_ext(base);
  ExtElem r2 = theta(E.get());

  auto g = galois_data(r2);
  CHECK(g.conj == -r2);
  CHECK(is_zero(g.trace));
  CHECK(g.norm == make_elem(base, -2));

  auto h = galois_data(e_int(E.get(), 1) + r2);
  CHECK(h.conj == e_int(E.get(), 1) - r2);
  CHECK(h.trace == make_elem(base, 2));
  CHECK(h.norm == make_elem(base, -1));

  auto U = make_extension(base, unramified_descriptor(base));
  ExtElem z = e_int(U.get(), 5);
  auto gu = galois_data(z);
  CHECK(gu.conj == z);
  CHECK(gu.trace == make_elem(base, 10));
  CHECK(gu.norm == make_elem(base, 25));
}

TEST_CASE("different valuations") {
  auto base = q2(6);
  CHECK(different_valuation(sqrt2_ext(base)) == 3);
  CHECK(different_valuation(gauss_ext(base)) == 2);
  CHECK(different_valuation(make_extension(base, unramified_descriptor(base))) == 0);
}

TEST_CASE("conjugation is an involution; norm and trace behave") {
  auto base = q2(4);
  for (auto E : {sqrt2_ext(base), gauss_ext(base), make_extension(base, unramified_descriptor(base))}) {
    auto elems = enumerate_E(E.get(), std::min(E->prec_e, 4));
    for (const auto& z : elems) {
      CHECK(conj(conj(z)) == z);
      CHECK(z + conj(z) == e_from_base(E.get(), trace(z)));
      CHECK(z * conj(z) == e_from_base(E.get(), norm(z)));
    }
    for (const auto& z : elems)
      for (const auto& w : elems) {
        CHECK(norm(z * w) == norm(z) * norm(w));
        CHECK(trace(z + w) == trace(z) + trace(w));
      }
    for (const auto& s : enumerate_residues(base, 2)) {
      for (const auto& z : elems)
        CHECK(trace(scalar_mul(s, z)) == s * trace(z));
    }
  }
}

TEST_CASE("valuation structure of E") {
  auto base = q2(5);
  auto E = sqrt2_ext(base);
  CHECK(val_E(theta(E.get())) == 1);
  CHECK(val_E(e_int(E.get(), 2)) == 2);
  CHECK(val_E(e_int(E.get(), 0)) == kAbovePrecision);
  for (const auto& z : enumerate_E(E.get(), 6))
    for (const auto& w : enumerate_E(E.get(), 6)) {
      int vz = val_E(z), vw = val_E(w);
      if (vz == kAbovePrecision || vw == kAbovePrecision) continue;
      if (vz + vw < 6) CHECK(val_E(z * w) == vz + vw);
    }
  // inverse on units
  for (const auto& z : enumerate_E(E.get(), E->prec_e)) {
    if (val_E(z) != 0) continue;
    CHECK(z * e_inv(z) == e_int(E.get(), 1));
  }
}

TEST_CASE("different equals twice the trace valuation without a trace-zero uniformizer") {
  auto base = q2(6);
  for (const auto& c : classify_extensions(base)) {
    if (c.kind != ExtKind::ramified || c.d == kTraceZeroD) continue;
    ExtCtx E = make_extension(base, c);
    RingElem tr = trace(theta(E.get()));
    CHECK(different_valuation(E) == 2 * valuation(tr));
  }
}

TEST_CASE("non-extremal discriminant roots sit deep in the unit filtration") {
  auto base = q2(8);
  for (const auto& c : classify_extensions(base)) {
    if (c.kind != ExtKind::ramified || c.d == kTraceZeroD) continue;
    ExtCtx E = make_extension(base, c);
    int e = base->e, d = c.d;
    RingElem disc = c.a * c.a - make_elem(base, 4) * c.b * uniformizer(base.get());
    RingElem disc_unit = div_pi_pow(disc, 2 * d);
    ExtElem target = e_from_base(E.get(), disc_unit);
    int threshold = 2 * (e - d) + 1;
    int wl = threshold + 2 * e + 2;
    bool found = false;
    for (const auto& r : enumerate_E(E.get(), wl)) {
      if (val_E(r) != 0) continue;
      if (e_equal_at(r * r, target, wl)) {
        found = true;
        CHECK(unit_level_E(r) >= threshold);
      }
    }
    CHECK(found);
  }
}

TEST_CASE("norm fibers (set identity at finite level)") {
  auto base = q2(8);
  {
    auto E = sqrt2_ext(base);
    auto rep = norm_fiber_check(E, 2, 9);
    CHECK(rep.t == 2);
    CHECK(rep.holds);
  }
  {
    auto E = gauss_ext(base);
    auto rep = norm_fiber_check(E, 1, 7);
    CHECK(rep.t == 1);
    CHECK(rep.holds);
  }
  {
    auto base5 = q2(6);
    auto E = make_extension(base5, unramified_descriptor(base5));
    auto rep = norm_fiber_check(E, 1, 4);
    CHECK(rep.exponent == 1);
    CHECK(rep.holds);
  }
}

TEST_CASE("norm kernel checks") {
  auto base = q2(8);
  auto E = sqrt2_ext(base);

  // -1 has norm 1 and lies in U_E^2
  ExtElem minus1 = e_int(E.get(), -1);
  CHECK(norm(minus1) == make_elem(base, 1));
  CHECK(unit_level_E(minus1) == 2);

  auto rep = norm_kernel_check(E, 2, 10);
  CHECK(rep.contained);
  CHECK(rep.quotient_order == 2);
  CHECK(rep.collapse_ok);
  CHECK(rep.holds);

  auto repg = norm_kernel_check(gauss_ext(base), 1, 9);
  CHECK(repg.holds);

  auto base5 = q2(6);
  CHECK_THROWS_AS(norm_kernel_check(make_extension(base5, unramified_descriptor(base5)), 1, 4),
                  NotRamified);
}

TEST_CASE("extension spec grammar") {
  auto base = q2(6);
  ExtDescriptor d = parse_ext_spec(base, "eis:0,1");
  CHECK(d.diff_val == 3);
  CHECK(format_ext_spec(d) == "eis:0,1");
  CHECK(format_ext_spec(unramified_descriptor(base)) == "unram");
  CHECK_THROWS_AS(parse_ext_spec(base, "nonsense"), Error);
}

TEST_SUITE_END();
