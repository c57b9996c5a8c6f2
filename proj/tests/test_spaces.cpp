#include <doctest.h>

#include <cmath>
#include <random>

#include "bohr/error.hpp"
#include "bohr/spaces.hpp"
#include "oracles.hpp"

using namespace bohr;

namespace {

ComplexVector real_vec(std::initializer_list<double> xs) {
  ComplexVector z;
  for (double x : xs) z.emplace_back(x, 0.0);
  return z;
}

std::vector<double> moduli(const ComplexVector& z) {
  std::vector<double> m;
  for (auto c : z) m.push_back(std::abs(c));
  return m;
}

ComplexVector random_point(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  ComplexVector z(n);
  for (auto& c : z) c = {g(rng), g(rng)};
  return z;
}

std::vector<SpaceDescriptor> sample_spaces() {
  return {SpaceDescriptor::parse("lq:q=1:n=4"),       SpaceDescriptor::parse("lq:q=2.5:n=4"),
          SpaceDescriptor::parse("lq:q=inf:n=4"),     SpaceDescriptor::parse("mixed:s=1:m=2:t=2:n=2"),
          SpaceDescriptor::parse("lorentz:s=2:t=1:n=4"), SpaceDescriptor::parse("lorentz:s=3:t=inf:n=4"),
          SpaceDescriptor::parse("orlicz:psi=x^2+x^3:n=4")};
}

}  // namespace

TEST_SUITE("spaces") {

TEST_CASE("grammar round trip") {
  for (const char* text : {"lq:q=2:n=8", "mixed:s=1:m=2:t=2:n=3", "lorentz:s=2:t=1:n=4",
                           "orlicz:psi=x^2:n=4", "lq:q=inf:n=3:scale=0.5"}) {
    const auto s = SpaceDescriptor::parse(text);
    CHECK(s.to_string() == text);
    CHECK(SpaceDescriptor::parse(s.to_string()).same_as(s));
  }
  CHECK(SpaceDescriptor::parse("mixed:s=1:m=2:t=2:n=3").dim() == 6);
  CHECK(SpaceDescriptor::parse("lq:n=3:q=2").to_string() == "lq:q=2:n=3");
  CHECK_THROWS_AS(SpaceDescriptor::parse("lq:q=2"), ValidationError);
  CHECK_THROWS_AS(SpaceDescriptor::parse("lq:q=2:n=3:bogus=1"), ValidationError);
  CHECK_THROWS_AS(SpaceDescriptor::parse("lq:q=2:q=3:n=3"), ValidationError);
  CHECK_THROWS_AS(SpaceDescriptor::parse("ball:n=3"), ValidationError);
  CHECK_THROWS_AS(SpaceDescriptor::parse("lq:q=0.5:n=3"), ValidationError);
}

TEST_CASE("norm examples") {
  CHECK(norm(SpaceDescriptor::minkowski(2, 3), real_vec({1, 2, 2})) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(norm(SpaceDescriptor::mixed(2, 1, 2, 2), real_vec({3, 4, 0, 1})) ==
        doctest::Approx(6.0).epsilon(1e-14));
  const auto orl = SpaceDescriptor::parse("orlicz:psi=x^2:n=2");
  const double expected = oracle::luxemburg({3, 4}, [](double x) { return x * x; });
  CHECK(expected == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(norm(orl, real_vec({3, 4})) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(norm(SpaceDescriptor::minkowski(2, 3), real_vec({0, 0, 0})) == 0.0);
  CHECK(norm(SpaceDescriptor::minkowski(2, 2, 2.0), real_vec({3, 4})) == doctest::Approx(2.5));
}

TEST_CASE("norm errors") {
  const auto s = SpaceDescriptor::minkowski(2, 3);
  CHECK_THROWS_AS(norm(s, real_vec({1, 2})), ValidationError);
  CHECK_THROWS_AS(norm(s, real_vec({1, 2, std::nan("")})), ValidationError);
}

TEST_CASE("norms agree with direct formulas") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto z = random_point(rng, 5);
    const auto m = moduli(z);
    for (double q : {1.0, 1.5, 2.0, 4.0, oracle::inf})
      CHECK(norm(SpaceDescriptor::minkowski(q, 5), z) ==
            doctest::Approx(oracle::lq_norm(m, q)).epsilon(1e-12));
    for (auto [s, t] : {std::pair{2.0, 1.0}, {3.0, 2.0}, {2.0, oracle::inf}, {1.5, 4.0}})
      CHECK(norm(SpaceDescriptor::lorentz(s, t, 5), z) ==
            doctest::Approx(oracle::lorentz_norm(m, s, t)).epsilon(1e-12));
    const auto orl = SpaceDescriptor::parse("orlicz:psi=x^2+x^3:n=5");
    CHECK(norm(orl, z) ==
          doctest::Approx(oracle::luxemburg(m, [](double x) { return x * x + x * x * x; }))
              .epsilon(1e-10));
  }
}

TEST_CASE("lorentz with s = t is l_s") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto z = random_point(rng, 6);
    for (double s : {1.0, 2.0, 3.5})
      CHECK(norm(SpaceDescriptor::lorentz(s, s, 6), z) ==
            doctest::Approx(norm(SpaceDescriptor::minkowski(s, 6), z)).epsilon(1e-12));
  }
}

TEST_CASE("homogeneity and triangle inequality") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (const auto& s : sample_spaces()) {
    for (int i = 0; i < 20; ++i) {
      const auto z = random_point(rng, s.dim());
      const auto w = random_point(rng, s.dim());
      const Complex c(g(rng), g(rng));
      ComplexVector cz(z), sum(z);
      for (std::size_t k = 0; k < z.size(); ++k) {
        cz[k] *= c;
        sum[k] += w[k];
      }
      CHECK(norm(s, cz) == doctest::Approx(std::abs(c) * norm(s, z)).epsilon(1e-12));
      if (s.is_normed()) CHECK(norm(s, sum) <= norm(s, z) + norm(s, w) + 1e-12);
    }
  }
}

TEST_CASE("minkowski functional") {
  const auto two_ball = SpaceDescriptor::minkowski(2, 2, 2.0);
  CHECK(minkowski_functional(two_ball, real_vec({3, 4})) == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(minkowski_functional(two_ball, real_vec({0, 0})) == 0.0);
  CHECK(minkowski_functional(SpaceDescriptor::minkowski(1, 2), real_vec({0.3, 0.3})) ==
        doctest::Approx(0.6).epsilon(1e-10));
  std::mt19937_64 rng(9);
  for (const auto& s : sample_spaces()) {
    const auto z = random_point(rng, s.dim());
    CHECK(minkowski_functional(s, z) == doctest::Approx(norm(s, z)).epsilon(1e-9));
  }
  CHECK(contains(two_ball, real_vec({1.1, 1.1})));
  CHECK_FALSE(contains(two_ball, real_vec({1.5, 1.5})));
}

TEST_CASE("dual norm of the ones vector") {
  CHECK(dual_ones_norm(SpaceDescriptor::minkowski(2, 4)).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(dual_ones_norm(SpaceDescriptor::lorentz(2, 1, 4)).value == doctest::Approx(2.0).epsilon(1e-12));
  for (std::size_t n : {1, 3, 7})
    CHECK(dual_ones_norm(SpaceDescriptor::minkowski(1, n)).value == doctest::Approx(1.0));
  const auto num = dual_ones_norm(SpaceDescriptor::minkowski(2, 4), EmbedMethod::numeric);
  CHECK(num.value == doctest::Approx(2.0).epsilon(0.02));

  const OrliczFunction psi("x^2+x^3");
  for (std::size_t n : {2, 4}) {
    const auto s = SpaceDescriptor::orlicz(psi, n);
    const double closed = dual_ones_norm(s).value;
    CHECK(closed == doctest::Approx(static_cast<double>(n) * psi.inverse(1.0 / n)).epsilon(1e-10));
    CHECK(dual_ones_norm(s, EmbedMethod::numeric).value == doctest::Approx(closed).epsilon(0.02));
  }
  const auto lor = SpaceDescriptor::lorentz(3, 1, 5);
  CHECK(dual_ones_norm(lor, EmbedMethod::numeric).value ==
        doctest::Approx(dual_ones_norm(lor).value).epsilon(0.02));
}

TEST_CASE("embedding norms") {
  const auto l1 = SpaceDescriptor::minkowski(1, 4), l2 = SpaceDescriptor::minkowski(2, 4);
  CHECK(embed_norm(l1, l2).value == doctest::Approx(1.0));
  CHECK(embed_norm(l2, l1).value == doctest::Approx(2.0));
  CHECK(embed_norm(l2, l1).exact);
  CHECK(embed_norm(SpaceDescriptor::mixed(2, 1, 3, 1), SpaceDescriptor::mixed(2, 2, 3, 2)).value ==
        doctest::Approx(1.0));
  for (std::size_t n : {2, 4})
    for (double s : {1.0, 1.5, 2.0, 4.0, oracle::inf})
      for (double t : {1.0, 2.0, oracle::inf}) {
        const auto a = SpaceDescriptor::minkowski(s, n), b = SpaceDescriptor::minkowski(t, n);
        const double expected = oracle::identity_lq(n, s, t);
        CHECK(embed_norm(a, b).value == doctest::Approx(expected).epsilon(1e-12));
        CHECK(embed_norm(a, b, EmbedMethod::numeric).value == doctest::Approx(expected).epsilon(0.02));
      }
  // The mixed factorization identity against the numeric path.
  const auto m1 = SpaceDescriptor::mixed(2, 1, 2, 2), m2 = SpaceDescriptor::mixed(2, 2, 2, 1);
  const double expected = oracle::identity_lq(2, 1, 2) * oracle::identity_lq(2, 2, 1);
  CHECK(embed_norm(m1, m2).value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(embed_norm(m1, m2, EmbedMethod::numeric).value == doctest::Approx(expected).epsilon(0.02));
  // Maximizers such as one unit vector per block need mass transfers inside a block.
  for (double a : {1.0, 2.0, oracle::inf})
    for (double b : {1.0, 2.0, oracle::inf})
      for (double c : {1.0, 2.0, oracle::inf})
        for (double d : {1.0, 2.0, oracle::inf}) {
          const double product = oracle::identity_lq(2, a, c) * oracle::identity_lq(3, b, d);
          CHECK(embed_norm(SpaceDescriptor::mixed(2, a, 3, b), SpaceDescriptor::mixed(2, c, 3, d),
                           EmbedMethod::numeric)
                    .value == doctest::Approx(product).epsilon(0.02));
        }
  CHECK_THROWS_AS(embed_norm(SpaceDescriptor::lorentz(2, 1, 4), SpaceDescriptor::orlicz(OrliczFunction("x^3"), 4),
                             EmbedMethod::closed_form),
                  NoClosedFormError);
  CHECK_THROWS_AS(embed_norm(l1, SpaceDescriptor::minkowski(1, 3)), ValidationError);
}

TEST_CASE("embedding norms are submultiplicative") {
  const auto spaces = std::vector<SpaceDescriptor>{
      SpaceDescriptor::minkowski(1, 4), SpaceDescriptor::minkowski(3, 4),
      SpaceDescriptor::lorentz(2, 1, 4), SpaceDescriptor::mixed(2, 2, 2, 1),
      SpaceDescriptor::orlicz(OrliczFunction("x^2"), 4)};
  for (const auto& a : spaces)
    for (const auto& b : spaces)
      for (const auto& c : spaces) {
        const double ab = embed_norm(a, b).value, bc = embed_norm(b, c).value,
                     ac = embed_norm(a, c).value;
        CHECK(ab * bc >= ac * (1.0 - 0.02) - 1e-9);
      }
}

TEST_CASE("sup of the p-norm over the ball") {
  CHECK(sup_pnorm_on_ball(SpaceDescriptor::polydisc(2), 1).value == doctest::Approx(2.0));
  CHECK(oracle::grid_sup_pnorm_2d(oracle::inf, 1) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sup_pnorm_on_ball(SpaceDescriptor::minkowski(2, 4), 1).value == doctest::Approx(2.0));
  for (double q : {1.0, 2.0, 3.0})
    for (double p : {q, q + 1.0, 10.0})
      CHECK(sup_pnorm_on_ball(SpaceDescriptor::minkowski(q, 5), p).value == doctest::Approx(1.0));
  for (double q : {1.5, 3.0, oracle::inf})
    for (double p : {1.0, 1.2, 2.0}) {
      const auto s = SpaceDescriptor::minkowski(q, 2);
      const double grid = oracle::grid_sup_pnorm_2d(q, p);
      CHECK(sup_pnorm_on_ball(s, p).value == doctest::Approx(grid).epsilon(1e-6));
      CHECK(sup_pnorm_on_ball(s, p, EmbedMethod::numeric).value == doctest::Approx(grid).epsilon(0.02));
      CHECK(sup_pnorm_on_ball(s, p).value ==
            doctest::Approx(embed_norm(s, SpaceDescriptor::minkowski(p, 2)).value));
    }
  CHECK(sup_pnorm_on_ball(SpaceDescriptor::minkowski(2, 4, 0.5), 1).value == doctest::Approx(1.0));
}

TEST_CASE("domain scaling") {
  const auto b1 = SpaceDescriptor::minkowski(1, 2), b2 = SpaceDescriptor::minkowski(2, 2);
  CHECK(domain_scaling(b1, b2).value == doctest::Approx(1.0));
  CHECK(domain_scaling(b2, b1, EmbedMethod::numeric).value == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));
  CHECK(domain_scaling(b2, b1).value == doctest::Approx(std::sqrt(2.0)));
  const auto lor = SpaceDescriptor::lorentz(2, 1, 3);
  CHECK(domain_scaling(lor, lor).value == 1.0);
  CHECK(domain_scaling(b1.with_scale(3.0), b2).value == doctest::Approx(3.0));
  CHECK(domain_scaling(b1, b2.with_scale(4.0)).value == doctest::Approx(0.25));
}

TEST_CASE("orlicz inverse") {
  CHECK(OrliczFunction("x^2").inverse(0.25) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(OrliczFunction("x^2+x^3").inverse(2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(OrliczFunction("x").inverse(7.0) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(OrliczFunction("x^2").inverse(0.0) == 0.0);
  CHECK_THROWS_AS(OrliczFunction("x^0.5"), ValidationError);
  CHECK_THROWS_AS(OrliczFunction("x-1"), ValidationError);
  CHECK_THROWS_AS(OrliczFunction("2+x^2"), ValidationError);
}

TEST_CASE("unconditionality") {
  const auto l2 = check_unconditionality(SpaceDescriptor::minkowski(2, 4), 100, 1);
  CHECK(l2.pass);
  CHECK(l2.max_deviation <= 1e-12);
  CHECK(check_unconditionality(SpaceDescriptor::lorentz(2, 1, 4), 100, 1).pass);
  CHECK(check_unconditionality(SpaceDescriptor::mixed(2, 1, 2, 2), 100, 1).pass);
  CHECK(check_unconditionality(SpaceDescriptor::parse("orlicz:psi=x^2+x^3:n=3"), 100, 1).pass);
}

TEST_CASE("coordinate reach") {
  CHECK(coordinate_reach(SpaceDescriptor::minkowski(2, 3, 0.5), 1) == doctest::Approx(0.5));
  CHECK(coordinate_reach(SpaceDescriptor::lorentz(2, 1, 3), 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(coordinate_reach(SpaceDescriptor::polydisc(2), 2), ValidationError);
}

}  // TEST_SUITE
