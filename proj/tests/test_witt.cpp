#include <cmath>
#include <random>

#include "catsite/witt.hpp"
#include "doctest.h"

using namespace catsite;

namespace {

std::vector<mpz_class> ints(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

mpz_class ipow(const mpz_class& b, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// Oracle: ghost components straight from the defining sum.
std::vector<mpz_class> ghost_oracle(int p, const std::vector<mpz_class>& x) {
  std::vector<mpz_class> g;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mpz_class s = 0;
    for (std::size_t i = 0; i <= k; ++i) s += ipow(p, i) * ipow(x[i], ipow(p, k - i).get_ui());
    g.push_back(s);
  }
  return g;
}

// Oracle: invert the ghost map over the rationals, coordinate by coordinate.
std::vector<mpq_class> ghost_inverse(int p, const std::vector<mpz_class>& g) {
  std::vector<mpq_class> x;
  for (std::size_t k = 0; k < g.size(); ++k) {
    mpq_class rest = g[k];
    for (std::size_t i = 0; i < k; ++i) {
      mpq_class t;
      mpz_class num = ipow(x[i].get_num(), ipow(p, k - i).get_ui());
      mpz_class den = ipow(x[i].get_den(), ipow(p, k - i).get_ui());
      t = mpq_class(num, den);
      t.canonicalize();
      rest -= mpq_class(ipow(p, i)) * t;
    }
    rest /= mpq_class(ipow(p, k));
    x.push_back(rest);
  }
  return x;
}

std::vector<mpz_class> as_integers(const std::vector<mpq_class>& x) {
  std::vector<mpz_class> out;
  for (const auto& q : x) {
    REQUIRE(q.get_den() == 1);
    out.push_back(q.get_num());
  }
  return out;
}

WittVector random_witt(std::mt19937& rng, int p, int n, int range) {
  std::uniform_int_distribution<long> d(-range, range);
  std::vector<mpz_class> c;
  for (int k = 0; k < n; ++k) c.emplace_back(d(rng));
  return make_witt(p, c);
}

int additive_order(const FiniteRing& r, int x) {
  int k = 1;
  for (int s = x; s != r.zero; s = r.add[s][x]) ++k;
  return k;
}

}  // namespace

TEST_CASE("Witt polynomials") {
  CHECK(witt_polynomials(2, 1)[0] == Polynomial::variable(1, 0));
  const auto w2 = witt_polynomials(2, 2);
  CHECK(w2[1].to_string({"x0", "x1"}) == "x0^2 + 2*x1");
  const auto w3 = witt_polynomials(3, 2);
  CHECK(w3[1].to_string({"x0", "x1"}) == "x0^3 + 3*x1");
  CHECK_THROWS_AS(witt_polynomials(4, 2), Error);
  CHECK_THROWS_AS(witt_polynomials(2, 0), Error);
}

TEST_CASE("polynomial arithmetic") {
  const int v = 2;
  const auto x = Polynomial::variable(v, 0), y = Polynomial::variable(v, 1);
  const auto s = (x + y).pow(3);
  CHECK(s.coefficient({2, 1}) == 3);
  CHECK(s.term_count() == 4);
  CHECK((s - s).is_zero());
  CHECK(s.evaluate(ints({2, 5})) == 343);
  CHECK(s.evaluate_mod(ints({2, 5}), 10) == 3);
  CHECK((x * y).rename(1, {0, 0}) == Polynomial::variable(1, 0).pow(2));
  CHECK(s.scaled(6).divide_exact(3) == s.scaled(2));
  CHECK_FALSE(s.divide_exact(3));
  CHECK_THROWS_AS(x.pow(200) * x.pow(100), Error);
}

TEST_CASE("structure polynomials") {
  SUBCASE("first components") {
    for (int p : {2, 3, 5}) {
      const auto& s = derive_structure_polynomials(p, 1);
      const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
      CHECK(s.add[0] == x + y);
      CHECK(s.mul[0] == x * y);
    }
  }

  SUBCASE("p = 2, n = 2 addition") {
    const auto& s = derive_structure_polynomials(2, 2);
    CHECK(s.add[1].to_string({"x0", "x1", "y0", "y1"}) == "-x0*y0 + x1 + y1");
  }

  SUBCASE("p = 3, n = 2 multiplication") {
    const auto& s = derive_structure_polynomials(3, 2);
    const int v = 4;
    auto var = [&](int i) { return Polynomial::variable(v, i); };
    // (x0^3 + 3x1)(y0^3 + 3y1) = x0^3 y0^3 + 3 M_1, solved by hand.
    CHECK(s.mul[1] == var(0).pow(3) * var(3) + var(1) * var(2).pow(3) + (var(1) * var(3)).scaled(3));
  }

  SUBCASE("integral and ghost compatible") {
    for (int p : {2, 3, 5})
      for (int n = 1; n <= 4; ++n) {
        CAPTURE(p);
        CAPTURE(n);
        const auto& s = derive_structure_polynomials(p, n);
        CHECK(static_cast<int>(s.add.size()) == n);
        CHECK(static_cast<int>(s.frobenius.size()) == n - 1);
        CHECK(check_ghost_compatibility(s));
        CHECK(&s == &derive_structure_polynomials(p, n));
      }
  }

  SUBCASE("limits") {
    CHECK_THROWS_AS(derive_structure_polynomials(5, 5), Error);
    CHECK_THROWS_AS(derive_structure_polynomials(6, 2), Error);
  }
}

TEST_CASE("Witt vector arithmetic") {
  SUBCASE("examples") {
    const auto one = make_witt(2, ints({1, 0}));
    CHECK(witt_add(one, one).coords == ints({2, -1}));
    CHECK(ghost(one) == ints({1, 1}));
    CHECK(ghost(make_witt(2, ints({0, 1}))) == ints({0, 2}));
    CHECK(ghost(witt_zero(3, 3)) == ints({0, 0, 0}));
    const auto a = make_witt(3, ints({4, -2, 7}));
    CHECK(witt_add(a, witt_zero(3, 3)) == a);
    CHECK(witt_mul(a, witt_one(3, 3)) == a);
    CHECK(witt_add(a, witt_neg(a)) == witt_zero(3, 3));
    CHECK(verschiebung(teichmuller(2, 3, 1)).coords == ints({0, 1, 0}));
  }

  SUBCASE("ghost oracle over the integers") {
    std::mt19937 rng(2024);
    int samples = 0;
    for (int p : {2, 3, 5})
      for (int n = 1; n <= 4; ++n) {
        const int count = p == 5 && n == 4 ? 40 : 90;
        for (int t = 0; t < count; ++t, ++samples) {
          const auto a = random_witt(rng, p, n, 12), b = random_witt(rng, p, n, 12);
          const auto ga = ghost_oracle(p, a.coords), gb = ghost_oracle(p, b.coords);
          CHECK(ghost(a) == ga);
          std::vector<mpz_class> gs, gm;
          for (int k = 0; k < n; ++k) {
            gs.push_back(ga[k] + gb[k]);
            gm.push_back(ga[k] * gb[k]);
          }
          const auto sum = witt_add(a, b), prod = witt_mul(a, b);
          CHECK(ghost(sum) == gs);
          CHECK(ghost(prod) == gm);
          CHECK(sum.coords == as_integers(ghost_inverse(p, gs)));
          CHECK(prod.coords == as_integers(ghost_inverse(p, gm)));
        }
      }
    CHECK(samples >= 1000);
  }

  SUBCASE("Teichmuller, Frobenius and Verschiebung") {
    std::mt19937 rng(7);
    for (int p : {2, 3})
      for (int n = 2; n <= 4; ++n)
        for (int t = 0; t < 20; ++t) {
          std::uniform_int_distribution<long> d(-9, 9);
          const mpz_class u = d(rng), w = d(rng);
          CHECK(witt_mul(teichmuller(p, n, u), teichmuller(p, n, w)) == teichmuller(p, n, u * w));
          const auto a = random_witt(rng, p, n, 9), b = random_witt(rng, p, n, 9);
          // Ghost shift.
          const auto ga = ghost(a), gf = ghost(frobenius(a));
          for (int k = 0; k + 1 < n; ++k) CHECK(gf[k] == ga[k + 1]);
          // F∘V = p.
          CHECK(frobenius(verschiebung(a)) == truncate(witt_mul(witt_integer(p, n, p), a), n - 1));
          // V(a)·b = V(a·F(b)).
          const auto lhs = witt_mul(verschiebung(a), b);
          const auto rhs = verschiebung(witt_mul(truncate(a, n - 1), frobenius(b)), n);
          CHECK(lhs == rhs);
        }
  }

  SUBCASE("modular coefficients") {
    const CoefficientRing f2{2}, f3{3}, z4{4};
    const auto one2 = witt_one(2, 2, f2);
    CHECK(witt_add(one2, one2).coords == ints({0, 1}));
    const auto three = witt_integer(3, 2, 3, f3);
    CHECK(three.coords[0] == 0);
    CHECK(three.coords[1] != 0);
    // Reducing 3 = (3, -8) from the integers.
    CHECK(three.coords == make_witt(3, witt_integer(3, 2, 3).coords, f3).coords);
    CHECK(witt_integer(2, 2, 4, z4) != witt_zero(2, 2, z4));
    CHECK(witt_integer(2, 2, 8, z4) == witt_zero(2, 2, z4));
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(witt_add(witt_one(2, 2), witt_one(3, 2)), Error);
    CHECK_THROWS_AS(witt_add(witt_one(2, 2), witt_one(2, 3)), Error);
    CHECK_THROWS_AS(witt_add(witt_one(2, 2), witt_one(2, 2, {4})), Error);
    CHECK_THROWS_AS(frobenius(witt_one(2, 1)), Error);
    CHECK_THROWS_AS(make_witt(9, ints({1})), Error);
    CHECK_THROWS_AS(verschiebung(witt_one(2, 2), 4), Error);
  }
}

TEST_CASE("Witt vectors of finite rings") {
  const auto f2 = integers_mod(2), f3 = integers_mod(3), z4 = integers_mod(4);

  SUBCASE("ring axioms") {
    for (const auto* a : {&f2, &f3, &z4})
      for (int p : {2, 3})
        for (int n = 1; n <= 3; ++n) {
          CAPTURE(a->size());
          CAPTURE(p);
          CAPTURE(n);
          const auto w = greenberg_affine(p, n, *a);
          CHECK(w.size() == static_cast<int>(std::pow(a->size(), n)));
          CHECK(validate_ring(w).ok());
        }
  }

  SUBCASE("length one is the ring itself") {
    for (const auto* a : {&f2, &f3, &z4}) {
      const auto w = greenberg_affine(2, 1, *a);
      CHECK(w.add == a->add);
      CHECK(w.mul == a->mul);
    }
  }

  SUBCASE("W_n(F_p) is Z/p^n") {
    const auto w2 = greenberg_affine(2, 2, f2);
    const int two = w2.add[w2.one][w2.one];
    CHECK(w2.elements[two] == "(0,1)");
    CHECK(additive_order(w2, w2.one) == 4);
    CHECK(additive_order(greenberg_affine(2, 3, f2), 1) == 8);
    const auto w3 = greenberg_affine(3, 2, f3);
    const int t = w3.add[w3.add[w3.one][w3.one]][w3.one];
    CHECK(w3.elements[t] == "(0,1)");
    CHECK(additive_order(w3, w3.one) == 9);
    // 1 generates W_2(Z/4) additively up to order 8, so it is not Z/16.
    CHECK(additive_order(greenberg_affine(2, 2, z4), 1) == 8);
  }

  SUBCASE("agrees with vector arithmetic mod m") {
    const auto w = greenberg_affine(2, 2, z4);
    for (int u = 0; u < w.size(); ++u)
      for (int v = 0; v < w.size(); ++v) {
        const auto a = make_witt(2, ints({u % 4, u / 4}), {4});
        const auto b = make_witt(2, ints({v % 4, v / 4}), {4});
        const auto s = witt_add(a, b), m = witt_mul(a, b);
        CHECK(w.add[u][v] == s.coords[0].get_si() + 4 * s.coords[1].get_si());
        CHECK(w.mul[u][v] == m.coords[0].get_si() + 4 * m.coords[1].get_si());
      }
  }

  SUBCASE("functoriality") {
    const std::vector<int> reduce{0, 1, 0, 1};
    REQUIRE(is_ring_homomorphism(z4, f2, reduce));
    CHECK_FALSE(is_ring_homomorphism(z4, f2, {0, 1, 1, 0}));
    for (int n = 1; n <= 3; ++n) {
      const auto map = greenberg_map(n, z4, f2, reduce);
      CHECK(is_ring_homomorphism(greenberg_affine(2, n, z4), greenberg_affine(2, n, f2), map));
      const std::vector<int> id{0, 1, 2};
      CHECK(is_ring_homomorphism(greenberg_affine(3, n, f3), greenberg_affine(3, n, f3), greenberg_map(n, f3, f3, id)));
    }
  }

  SUBCASE("validation and bounds") {
    auto broken = z4;
    broken.mul[2][3] = 1;
    CHECK_FALSE(validate_ring(broken).ok());
    CHECK_THROWS_AS(greenberg_affine(2, 4, z4, 100), BoundExceeded);
    CHECK(ring_negate(z4, 1) == 3);
  }
}

TEST_CASE("extension ring rule") {
  const auto r = check_extension_ring_rule();
  CHECK(r.commutative);
  CHECK(r.associative);
  CHECK(r.unital);
  CHECK(r.distributive);
  CHECK(r.embedding_is_homomorphism);
  CHECK(r.holds());
}
