#include <doctest.h>

#include "btstab/ring.hpp"

using namespace btstab;

TEST_SUITE_BEGIN("ring");

static FieldCtx q2(int prec) { return make_base_field(FieldKind::trivial, {}, prec); }
static FieldCtx q2_sqrt2(int prec) {
  return make_base_field(FieldKind::eisenstein, {-2, 0}, prec);
}
static FieldCtx q2_unram(int prec) {
  return make_base_field(FieldKind::unramified, {1, 1}, prec);
}

TEST_CASE("base field construction") {
  auto F = q2(4);
  CHECK(F->e == 1);
  CHECK(F->f == 1);
  CHECK(F->prec == 4);

  auto E = q2_sqrt2(6);
  CHECK(E->e == 2);
  CHECK(E->deg == 2);

  auto G = make_base_field(FieldKind::eisenstein, {-6, 0}, 4);  // y^2 - 6 is Eisenstein at 2
  CHECK(G->e == 2);

  CHECK_THROWS_AS(make_base_field(FieldKind::eisenstein, {-1, 0}, 4), NotEisenstein);
  CHECK_THROWS_AS(make_base_field(FieldKind::eisenstein, {-2, 1}, 4), NotEisenstein);
  // residue poly x^2 - 1 has a root over F_2
  CHECK_THROWS_AS(make_base_field(FieldKind::unramified, {-1, 0}, 4), ResidueReducible);
  CHECK_THROWS_AS(make_base_field(FieldKind::trivial, {}, 0), PrecisionTooSmall);
}

TEST_CASE("arithmetic mod 16") {
  auto F = q2(4);
  auto e = [&](std::int64_t v) { return make_elem(F, v); };
  CHECK(key_at(e(7) + e(11), 4)[0] == 2);
  CHECK(key_at(inv(e(3)), 4)[0] == 11);
  CHECK_THROWS_AS(inv(e(6)), NotAUnit);
  CHECK(e(5) * e(5) == e(25));
  CHECK(-e(3) == e(13));
}

TEST_CASE("valuation") {
  auto F = q2(4);
  CHECK(valuation(make_elem(F, 12)) == 2);
  CHECK(valuation(make_elem(F, 0)) == kAbovePrecision);
  CHECK(valuation(make_elem(F, 16)) == kAbovePrecision);

  auto E = q2_sqrt2(6);
  RingElem two_pi = make_elem(E, 2) * uniformizer(E.get());
  CHECK(valuation(two_pi) == 3);
  CHECK(valuation(uniformizer(E.get())) == 1);
  CHECK(valuation(make_elem(E, 2)) == 2);
}

TEST_CASE("unit level") {
  auto F = q2(4);
  CHECK(unit_level(make_elem(F, 5)) == 2);
  CHECK(unit_level(make_elem(F, 3)) == 1);
  CHECK(unit_level(make_elem(F, 6)) == kNotAUnit);
  CHECK(unit_level(make_elem(F, 1)) == 3);  // capped at prec-1

  auto U = q2_unram(3);
  // a generic unit of the residue field F_4 is not 1 mod p
  CHECK(unit_level(make_elem(U, {0, 1})) == 0);
}

TEST_CASE("residue enumeration") {
  CHECK(enumerate_residues(q2(4), 3).size() == 8);
  CHECK(enumerate_residues(q2_sqrt2(6), 2).size() == 4);
  auto r = enumerate_residues(q2(4), 1);
  REQUIRE(r.size() == 2);
  CHECK(key_at(r[0], 1)[0] == 0);
  CHECK(key_at(r[1], 1)[0] == 1);
  CHECK_THROWS_AS(enumerate_residues(q2(4), 5), LevelOutOfRange);
  CHECK(enumerate_residues(q2_unram(3), 1).size() == 4);
}

TEST_CASE("ring axioms hold exhaustively at small precision") {
  for (auto ctx : {q2(3), q2_sqrt2(3), q2_unram(2)}) {
    auto R = enumerate_residues(ctx, ctx->prec);
    for (const auto& a : R)
      for (const auto& b : R) {
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        for (const auto& c : R) {
          CHECK((a + b) + c == a + (b + c));
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
        }
      }
  }
}

TEST_CASE("valuation properties") {
  auto ctx = q2_sqrt2(4);
  auto R = enumerate_residues(ctx, 4);
  for (const auto& a : R)
    for (const auto& b : R) {
      int va = valuation(a), vb = valuation(b);
      int vab = valuation(a * b);
      if (va != kAbovePrecision && vb != kAbovePrecision && va + vb < ctx->prec)
        CHECK(vab == va + vb);
      int vs = valuation(a + b);
      CHECK(vs >= std::min(va, vb));
      if (va != vb) CHECK(vs == std::min({va, vb, kAbovePrecision}));
    }
}

TEST_CASE("inv is an involution on units") {
  for (auto ctx : {q2(5), q2_sqrt2(4), q2_unram(3)}) {
    for (const auto& a : enumerate_residues(ctx, ctx->prec)) {
      if (!is_unit(a)) continue;
      CHECK(inv(inv(a)) == a);
      CHECK(a * inv(a) == make_elem(ctx, 1));
    }
  }
}

TEST_CASE("unit filtration is multiplicative") {
  auto ctx = q2(5);
  for (const auto& a : enumerate_residues(ctx, 5))
    for (const auto& b : enumerate_residues(ctx, 5)) {
      if (!is_unit(a) || !is_unit(b)) continue;
      CHECK(unit_level(a * b) >= std::min(unit_level(a), unit_level(b)));
    }
}

TEST_CASE("uniformizer division") {
  auto ctx = q2_sqrt2(6);
  auto R = enumerate_residues(ctx, 6);
  for (const auto& a : R) {
    int v = valuation(a);
    if (v == kAbovePrecision || v < 2) continue;
    RingElem q = div_pi_pow(a, 2);
    CHECK(equal_at(mul_pi_pow(q, 2), a, ctx->prec));
  }
  CHECK_THROWS_AS(div_pi_pow(make_elem(ctx, {1, 0}), 1), Error);
}

TEST_CASE("element literals") {
  auto F = q2(4);
  CHECK(parse_elem(F, "7") == make_elem(F, 7));
  CHECK(parse_elem(F, "-1") == make_elem(F, -1));
  auto E = q2_sqrt2(6);
  CHECK(parse_elem(E, "3+2*w") == make_elem(E.get(), {3, 2}));
  CHECK(parse_elem(E, "w") == uniformizer(E.get()));
  CHECK(parse_elem(E, "-2*w") == make_elem(E.get(), {0, -2}));
  CHECK(format_elem(make_elem(E.get(), {3, 2})) == "3+2*w");
  RingElem a = parse_elem(E, format_elem(make_elem(E.get(), {5, 7})));
  CHECK(a == make_elem(E.get(), {5, 7}));
}

TEST_SUITE_END();
