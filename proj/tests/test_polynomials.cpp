#include <doctest.h>

#include <cmath>
#include <random>

#include "bohr/error.hpp"
#include "bohr/families.hpp"
#include "bohr/majorant.hpp"
#include "bohr/poly_io.hpp"
#include "bohr/polynomial.hpp"
#include "bohr/sup_norm.hpp"
#include "oracles.hpp"

using namespace bohr;
using C = std::complex<double>;

namespace {

CoeffValue random_matrix(std::mt19937_64& rng, std::size_t k) {
  std::normal_distribution<double> g;
  std::vector<C> d(k * k);
  for (auto& v : d) v = {g(rng), g(rng)};
  return CoeffValue::matrix(k, d);
}

oracle::Matrix to_rows(const CoeffValue& x) {
  oracle::Matrix m(x.size(), std::vector<C>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) m[i][j] = x(i, j);
  return m;
}

PluriharmonicPoly random_poly(std::mt19937_64& rng, std::size_t n, unsigned degree, CoeffKind kind) {
  RandomFamilySpec spec;
  spec.n = n;
  spec.max_degree = degree;
  spec.kind = kind;
  spec.count = 1;
  spec.normalize = false;
  return random_family(spec, rng())[0];
}

}  // namespace

TEST_SUITE("polynomials") {

TEST_CASE("operator norm") {
  CHECK(operator_norm(CoeffValue::identity(CoeffKind::square(2))) == doctest::Approx(1.0));
  CHECK(operator_norm(CoeffValue::diagonal({1.0, 2.0})) == doctest::Approx(2.0));
  CHECK(operator_norm(CoeffValue::matrix({{0.0, 2.0}, {0.0, 0.0}})) == doctest::Approx(2.0));
  CHECK(operator_norm(CoeffValue(C(3, 4))) == doctest::Approx(5.0));
  std::mt19937_64 rng(1);
  for (std::size_t k : {2, 3, 4, 6}) {
    for (int i = 0; i < 10; ++i) {
      const auto a = random_matrix(rng, k), b = random_matrix(rng, k);
      const double na = operator_norm(a);
      CHECK(na == doctest::Approx(oracle::power_iteration_norm(to_rows(a))).epsilon(1e-9));
      CHECK(operator_norm(a.adjoint()) == doctest::Approx(na).epsilon(1e-12));
      CHECK(operator_norm(a * b) <= na * operator_norm(b) * (1 + 1e-12));
      CHECK(a.adjoint().adjoint() == a);
    }
  }
  auto bad = CoeffValue::diagonal({1.0, std::nan("")});
  CHECK_THROWS_AS(operator_norm(bad), ValidationError);
}

TEST_CASE("real part and kinds") {
  const auto x = CoeffValue::matrix({{C(1, 1), C(2, 0)}, {C(0, 0), C(3, -1)}});
  const auto re = x.real_part();
  CHECK(re(0, 0) == C(1, 0));
  CHECK(re(0, 1) == C(1, 0));
  CHECK(re(1, 0) == C(1, 0));
  CHECK(CoeffKind::square(3).to_string() == "matrix 3");
  CHECK_THROWS_AS(CoeffValue::diagonal({1.0, 2.0}) + CoeffValue::diagonal({1.0, 2.0, 3.0}),
                  ValidationError);
}

TEST_CASE("multi-index ordering and helpers") {
  const auto idx = indices_of_degree(2, 2);
  REQUIRE(idx.size() == 3);
  CHECK(idx[0] == MultiIndex{2, 0});
  CHECK(idx[1] == MultiIndex{1, 1});
  CHECK(idx[2] == MultiIndex{0, 2});
  CHECK(MultiIndex{1, 0} < MultiIndex{2, 0});
  CHECK(indices_of_degree(3, 4).size() == 15);
  CHECK(MultiIndex::parse("1,0,2") == MultiIndex{1, 0, 2});
  CHECK(MultiIndex{1, 0, 2}.to_string() == "1,0,2");
  CHECK_THROWS_AS(MultiIndex::parse("1,-1"), ValidationError);
  for (double q : {1.0, 2.0, 3.0, oracle::inf}) CHECK(rho_alpha(MultiIndex{3, 0, 0}, q) == 1.0);
  CHECK(rho_alpha(MultiIndex{1, 1}, 2.0) == doctest::Approx(2.0));
  for (double q : {1.0, 1.5, 2.0})
    CHECK(rho_alpha(MultiIndex{2, 1, 3}, q) ==
          doctest::Approx(oracle::rho_alpha({2, 1, 3}, q)).epsilon(1e-12));
}

TEST_CASE("evaluate") {
  PluriharmonicPoly f(2);
  f.set_a(MultiIndex{1, 0}, 1.0);
  CHECK(evaluate(f, std::vector<C>{0.5, 0.0}).scalar_value() == C(0.5, 0));

  PluriharmonicPoly g(1);
  g.set_a(MultiIndex{1}, 1.0);
  g.set_b(MultiIndex{1}, 1.0);
  CHECK(std::abs(evaluate(g, std::vector<C>{C(0, 1)}).scalar_value()) < 1e-15);

  PluriharmonicPoly h(3, CoeffKind::square(2));
  h.set_a(MultiIndex(3), CoeffValue::diagonal({1.0, 2.0}));
  CHECK(evaluate(h, std::vector<C>{C(0.3, 1), 2.0, -1.0}) == CoeffValue::diagonal({1.0, 2.0}));

  // b enters through its adjoint.
  PluriharmonicPoly m(1, CoeffKind::square(2));
  m.set_b(MultiIndex{1}, CoeffValue::matrix({{0.0, C(0, 1)}, {0.0, 0.0}}));
  const auto v = evaluate(m, std::vector<C>{C(0, 1)});
  CHECK(std::abs(v(1, 0) - C(0, -1) * C(0, -1)) < 1e-15);
  CHECK_THROWS_AS(evaluate(f, std::vector<C>{1.0}), ValidationError);
}

TEST_CASE("evaluate is linear") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < 20; ++i) {
    const auto kind = i % 2 ? CoeffKind::square(2) : CoeffKind::scalar();
    const auto f = random_poly(rng, 3, 3, kind), g = random_poly(rng, 3, 3, kind);
    std::vector<C> z{{gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}, {gauss(rng), gauss(rng)}};
    const auto lhs = evaluate(f + g, z);
    const auto rhs = evaluate(f, z) + evaluate(g, z);
    CHECK(operator_norm(lhs - rhs) <= 1e-12 * (1 + operator_norm(lhs)));
  }
}

TEST_CASE("homogeneous parts") {
  PluriharmonicPoly f(2);
  f.set_a(MultiIndex{0, 0}, 1.0);
  f.set_a(MultiIndex{1, 0}, 1.0);
  f.set_a(MultiIndex{1, 1}, 1.0);
  f.set_b(MultiIndex{1, 0}, 1.0);
  const auto p2 = homogeneous_part(f, 2);
  CHECK(p2.a().size() == 1);
  CHECK(p2.a().count(MultiIndex{1, 1}) == 1);
  CHECK(p2.is_homogeneous(2));
  CHECK(homogeneous_part(f, 5).is_zero());
  const auto p1 = homogeneous_part(f, 1);
  CHECK(p1.b().count(MultiIndex{1, 0}) == 1);
  CHECK(homogeneous_part(f, 0).b().empty());

  std::mt19937_64 rng(2);
  const auto g = random_poly(rng, 2, 4, CoeffKind::square(2));
  PluriharmonicPoly sum(2, CoeffKind::square(2));
  for (unsigned m = 0; m <= g.max_degree(); ++m) sum = sum + homogeneous_part(g, m);
  CHECK(sum.a() == g.a());
  CHECK(sum.b() == g.b());
}

TEST_CASE("polynomial invariants") {
  PluriharmonicPoly f(2);
  CHECK_THROWS_AS(f.set_b(MultiIndex{0, 0}, 1.0), ValidationError);
  CHECK_THROWS_AS(f.set_a(MultiIndex{1}, 1.0), ValidationError);
  CHECK_THROWS_AS(f.set_a(MultiIndex{1, 0}, CoeffValue::diagonal({1.0, 1.0})), ValidationError);
  f.set_a(MultiIndex{1, 0}, 0.0);
  CHECK(f.is_zero());
  f.add_a(MultiIndex{0, 1}, 2.0);
  f.add_a(MultiIndex{0, 1}, -2.0);
  CHECK(f.is_zero());
}

TEST_CASE("text format round trip") {
  const char* text = R"(dim 2
kind matrix 2
id sample
sup 2 space lq:q=inf:n=2
a 0,0 = matrix[[(1,0),(0,0)],[(0,0),(2,0)]]   # constant
a 1,0 = matrix[[(0.5,0.25),(0,0)],[(0,0),(0,0)]]
b 0,1 = matrix[[(0,0),(1,0)],[(0,0),(0,0)]]
)";
  const auto f = parse_polynomial(text);
  CHECK(f.dim() == 2);
  CHECK(f.kind() == CoeffKind::square(2));
  CHECK(f.id() == "sample");
  CHECK(f.known_sup_for(SpaceDescriptor::polydisc(2)) == 2.0);
  const auto g = parse_polynomial(format_polynomial(f));
  CHECK(g.a() == f.a());
  CHECK(g.b() == f.b());
  CHECK(g.id() == f.id());

  const auto fam = parse_family("dim 1\na 1 = 1,0\n---\ndim 1\na 2 = 0,1\nb 1 = 3\n");
  REQUIRE(fam.size() == 2);
  CHECK(fam[1].b().at(MultiIndex{1}).scalar_value() == C(3, 0));
  CHECK(parse_family(format_family(fam)).size() == 2);
  CHECK_THROWS_AS(parse_polynomial("dim 2\na 1 = 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_polynomial("dim 1\nb 0 = 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_polynomial("dim 1\nc 1 = 1\n"), ValidationError);
}

TEST_CASE("sup norm examples") {
  PluriharmonicPoly sum(2);
  sum.set_a(MultiIndex{1, 0}, 1.0);
  sum.set_a(MultiIndex{0, 1}, 1.0);
  sum.set_known_sup_norm({2.0, {SpaceDescriptor::polydisc(2)}});
  const auto s = sup_norm(sum, SpaceDescriptor::polydisc(2));
  CHECK(s.certified);
  CHECK(s.value == 2.0);
  sum.clear_known_sup_norm();
  const auto sampled = sup_norm(sum, SpaceDescriptor::polydisc(2));
  CHECK_FALSE(sampled.certified);
  CHECK(sampled.value == doctest::Approx(2.0).epsilon(1e-6));

  PluriharmonicPoly prod(2);
  prod.set_a(MultiIndex{1, 1}, 1.0);
  const auto p = sup_norm(prod, SpaceDescriptor::minkowski(2, 2));
  CHECK(p.value == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(p.value <= 0.5 + 1e-12);

  PluriharmonicPoly cst(2, CoeffKind::square(2));
  cst.set_a(MultiIndex(2), CoeffValue::diagonal({1.0, 2.0}));
  const auto c = sup_norm(cst, SpaceDescriptor::polydisc(2));
  CHECK(c.value == 2.0);
  CHECK(c.certified);
}

TEST_CASE("sup norm agrees with a grid oracle on the bidisc") {
  PluriharmonicPoly q = quadratic_form_member(2);
  q.clear_known_sup_norm();
  const double grid = oracle::bidisc_grid_sup([](C z1, C z2) { return z1 * z1 + 2.0 * z1 * z2 - z2 * z2; });
  CHECK(grid == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-4));
  const auto s = sup_norm(q, SpaceDescriptor::polydisc(2));
  CHECK(s.value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));

  PluriharmonicPoly h(2);
  h.set_a(MultiIndex{1, 0}, C(0.5, 0.5));
  h.set_b(MultiIndex{0, 1}, 0.7);
  h.set_a(MultiIndex{1, 1}, -0.3);
  h.set_b(MultiIndex{2, 0}, C(0, 0.4));
  const double g2 = oracle::bidisc_grid_sup([](C z1, C z2) {
    return C(0.5, 0.5) * z1 + 0.7 * std::conj(z2) - 0.3 * z1 * z2 + C(0, -0.4) * std::conj(z1 * z1);
  });
  const auto s2 = sup_norm(h, SpaceDescriptor::polydisc(2));
  CHECK(s2.value == doctest::Approx(g2).epsilon(1e-3));
  CHECK(s2.value <= h.coefficient_norm_sum() + 1e-12);
}

TEST_CASE("sup norm stays below the coefficient sum") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto kind = i % 3 == 0 ? CoeffKind::square(3) : CoeffKind::scalar();
    const auto f = random_poly(rng, 2 + i % 2, 3, kind);
    const auto s = sup_norm(f, SpaceDescriptor::minkowski(i % 2 ? 2.0 : oracle::inf, f.dim()),
                            {4, 32, 150}, i);
    CHECK(s.value <= f.coefficient_norm_sum() + 1e-12);
    CHECK(s.uncertainty >= 0.0);
  }
}

TEST_CASE("sup norm is deterministic per seed") {
  std::mt19937_64 rng(6);
  const auto f = random_poly(rng, 3, 3, CoeffKind::square(2));
  const auto a = sup_norm(f, SpaceDescriptor::polydisc(3), {}, 42);
  const auto b = sup_norm(f, SpaceDescriptor::polydisc(3), {}, 42);
  CHECK(a.value == b.value);
  CHECK(a.uncertainty == b.uncertainty);
}

TEST_CASE("majorant sum examples") {
  const auto id = BoundedOperatorU::identity_scaled(1.0);
  PluriharmonicPoly z1(2);
  z1.set_a(MultiIndex{1, 0}, 1.0);
  CHECK(majorant_sum(z1, id, SpaceDescriptor::polydisc(2), 0.5, 1).value == doctest::Approx(0.5));

  const auto mob = mobius_family(0.5);
  for (double r : {0.1, 0.2, 1.0 / 3.0}) {
    const double m = majorant_sum(mob.poly, id, SpaceDescriptor::polydisc(1), r, 1).value;
    CHECK(m == doctest::Approx(oracle::mobius_majorant(0.5, r)).epsilon(1e-9));
    CHECK(std::abs(m - mob.majorant(r)) <= 1e-9);
  }
  CHECK(oracle::mobius_majorant(0.5, 1.0 / 3.0) == doctest::Approx(0.8));

  PluriharmonicPoly prod(2);
  prod.set_a(MultiIndex{1, 1}, 1.0);
  CHECK(majorant_sum(prod, id, SpaceDescriptor::minkowski(2, 2), 1.0, 1).value ==
        doctest::Approx(0.5).epsilon(1e-9));

  PluriharmonicPoly empty(2);
  CHECK(majorant_sum(empty, id, SpaceDescriptor::polydisc(2), 0.7, 1).value == 0.0);

  PluriharmonicPoly cst(1);
  cst.set_a(MultiIndex{0}, 3.0);
  cst.set_a(MultiIndex{1}, 1.0);
  CHECK(majorant_sum(cst, id, SpaceDescriptor::polydisc(1), 0.0, 2).value == doctest::Approx(9.0));
  CHECK_THROWS_AS(majorant_sum(cst, id, SpaceDescriptor::polydisc(2), 0.5, 1), ValidationError);
  CHECK_THROWS_AS(majorant_sum(cst, id, SpaceDescriptor::polydisc(1), 1.5, 1), ValidationError);
}

TEST_CASE("majorant sum is nondecreasing in r") {
  std::mt19937_64 rng(10);
  const auto u = BoundedOperatorU::identity_scaled(1.0);
  for (const auto& space : {SpaceDescriptor::minkowski(2, 3), SpaceDescriptor::lorentz(2, 1, 3),
                            SpaceDescriptor::polydisc(3)}) {
    const auto f = random_poly(rng, 3, 3, CoeffKind::scalar());
    double prev = -1.0;
    for (double r = 0.0; r <= 1.0; r += 0.125) {
      const double m = majorant_sum(f, u, space, r, 1.5).value;
      CHECK(m >= prev - 1e-9);
      prev = m;
    }
  }
}

TEST_CASE("operator U") {
  const auto u = BoundedOperatorU::identity_scaled(2.0);
  CHECK(u.norm() == 2.0);
  CHECK(u.image_norm(CoeffValue::diagonal({1.0, 3.0})) == doctest::Approx(6.0));
  const auto m = BoundedOperatorU::left_multiplier(CoeffValue::diagonal({1.0, 0.5}));
  CHECK(m.norm() == doctest::Approx(1.0));
  CHECK(m.image_norm(CoeffValue::diagonal({0.0, 4.0})) == doctest::Approx(2.0));
  CHECK(u.to_string() == "identity_scaled(2)");
}

TEST_CASE("mobius family") {
  const auto f = mobius_family(0.5);
  CHECK(f.majorant(0.5) == doctest::Approx(1.0));
  CHECK(f.critical_radius() == doctest::Approx(0.5));
  CHECK(f.poly.a().at(MultiIndex{2}).scalar_value().real() == doctest::Approx(-0.375));
  CHECK(evaluate(f.poly, std::vector<C>{0.0}).scalar_value() == C(0.5, 0));
  CHECK(f.tail_bound() < 1e-12);
  CHECK(f.poly.known_sup_for(SpaceDescriptor::polydisc(1)) == 1.0);
  CHECK_THROWS_AS(mobius_family(1.0), ValidationError);
  CHECK_THROWS_AS(mobius_family(0.0), ValidationError);
  CHECK_THROWS_AS(mobius_family(0.9, 10), ValidationError);
  CHECK(mobius_family(0.5, 200).degree == 200);
  // On a smaller domain the lift carries the closed form (a + rho)/(1 + a rho).
  const auto lifted = mobius_lift(0.5, SpaceDescriptor::minkowski(2, 2, 0.5));
  CHECK(*lifted.known_sup_for(SpaceDescriptor::minkowski(2, 2, 0.5)) == doctest::Approx(0.8));
}

TEST_CASE("random family") {
  RandomFamilySpec spec;
  spec.n = 2;
  spec.max_degree = 3;
  spec.count = 4;
  const auto a = random_family(spec, 7), b = random_family(spec, 7);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].a() == b[i].a());
    CHECK(a[i].b() == b[i].b());
    CHECK(sup_norm(a[i], SpaceDescriptor::polydisc(2), {}, 99).value ==
          doctest::Approx(1.0).epsilon(0.05));
  }
  spec.include_antiholomorphic = false;
  for (const auto& f : random_family(spec, 1)) CHECK(f.b().empty());
  spec.count = 0;
  CHECK(random_family(spec, 1).empty());
  spec.count = 1;
  spec.n = 9;
  CHECK_THROWS_AS(random_family(spec, 1), ValidationError);
  spec.allow_large = true;
  spec.normalize = false;
  CHECK(random_family(spec, 1).size() == 1);
}

TEST_CASE("closed-form members") {
  const auto s = SpaceDescriptor::minkowski(2, 2);
  const auto m = monomial(MultiIndex{1, 1}, s);
  CHECK(*m.known_sup_for(s) == doctest::Approx(0.5));
  const auto e = example_member(3, SpaceDescriptor::polydisc(2));
  CHECK(*e.known_sup_for(SpaceDescriptor::polydisc(2)) == 1.0);
  CHECK(std::abs(evaluate(e, std::vector<C>{1.0, 0.0}).scalar_value()) == doctest::Approx(1.0));
  const auto fam = certified_family(SpaceDescriptor::polydisc(2));
  for (const auto& f : fam) CHECK(sup_norm(f, SpaceDescriptor::polydisc(2)).certified);
}

}  // TEST_SUITE
