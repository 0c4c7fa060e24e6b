#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "catsite/fincat.hpp"

namespace catsite {

/// Polynomial with integer coefficients in a fixed number of variables
/// (at most 16, each exponent at most 255).
class Polynomial {
 public:
  static constexpr int kMaxVars = 16;
  static constexpr int kMaxExponent = 255;

  explicit Polynomial(int vars = 0);
  static Polynomial constant(int vars, const mpz_class& c);
  static Polynomial variable(int vars, int i);

  int vars() const { return vars_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  /// Terms sorted by exponent vector.
  std::vector<std::pair<std::vector<int>, mpz_class>> terms() const;
  mpz_class coefficient(const std::vector<int>& exponents) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const mpz_class& c) const;
  Polynomial pow(unsigned e) const;
  /// Every coefficient divided by d, or nullopt if one is not divisible.
  std::optional<Polynomial> divide_exact(const mpz_class& d) const;
  /// The same polynomial viewed in `vars` variables; variables beyond the
  /// current count are unused, and shrinking requires them to be unused.
  Polynomial with_vars(int vars) const;
  /// Variable i replaced by variable map[i] in a polynomial on `vars` variables.
  Polynomial rename(int vars, const std::vector<int>& map) const;

  mpz_class evaluate(const std::vector<mpz_class>& values) const;
  /// Evaluation reduced modulo m > 0, result in [0, m).
  mpz_class evaluate_mod(const std::vector<mpz_class>& values, const mpz_class& m) const;

  bool operator==(const Polynomial& o) const;
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  using Key = unsigned __int128;
  struct KeyHash {
    std::size_t operator()(Key k) const {
      return std::hash<unsigned long long>{}(static_cast<unsigned long long>(k) ^
                                              static_cast<unsigned long long>(k >> 64) * 0x9e3779b97f4a7c15ULL);
    }
  };
  static int exponent(Key k, int i) { return static_cast<int>((k >> (8 * i)) & 0xff); }
  void add_term(Key k, const mpz_class& c);

  int vars_;
  std::unordered_map<Key, mpz_class, KeyHash> terms_;
};

bool is_prime(int p);

/// w_0..w_{n-1} in variables x_0..x_{n-1}: w_k = Σ p^i x_i^(p^(k-i)).
/// Throws Error if p is not prime or n < 1.
std::vector<Polynomial> witt_polynomials(int p, int n);

/// Ghost-solved structure polynomials of W_n. Addition, multiplication and
/// negation use variables x_0..x_{n-1}, y_0..y_{n-1} (negation only the x);
/// Frobenius maps W_n to W_{n-1} and uses the x only.
struct StructurePolynomials {
  int p = 0;
  int n = 0;
  std::vector<Polynomial> add;
  std::vector<Polynomial> mul;
  std::vector<Polynomial> neg;
  std::vector<Polynomial> frobenius;
};

/// Solves w_k(S) = w_k(x) + w_k(y), w_k(M) = w_k(x)·w_k(y), w_k(N) = -w_k(x)
/// and w_k(F) = w_{k+1}(x) one degree at a time; every division by p^k is
/// checked to be exact. Results are cached per (p, n). Throws Error if p is
/// not prime, if p^(n-1) exceeds the exponent limit, or (a defect) if some
/// coefficient is not integral.
const StructurePolynomials& derive_structure_polynomials(int p, int n);

/// Ghost-compatibility identities checked symbolically.
bool check_ghost_compatibility(const StructurePolynomials& s);

/// Coefficients in Z (modulus 0) or Z/m.
struct CoefficientRing {
  mpz_class modulus = 0;
  friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;
};

struct WittVector {
  int p = 2;
  CoefficientRing ring;
  std::vector<mpz_class> coords;

  int length() const { return static_cast<int>(coords.size()); }
  friend bool operator==(const WittVector&, const WittVector&) = default;
};

/// Coordinates reduced into [0, m) for Z/m. Throws Error on a non-prime p,
/// an empty vector or a negative modulus.
WittVector make_witt(int p, std::vector<mpz_class> coords, CoefficientRing ring = {});
WittVector witt_zero(int p, int n, CoefficientRing ring = {});
WittVector witt_one(int p, int n, CoefficientRing ring = {});

/// Operands must share p, length and coefficient ring (Error otherwise).
WittVector witt_add(const WittVector& a, const WittVector& b);
WittVector witt_mul(const WittVector& a, const WittVector& b);
WittVector witt_neg(const WittVector& a);
/// k·1.
WittVector witt_integer(int p, int n, long k, CoefficientRing ring = {});
std::vector<mpz_class> ghost(const WittVector& a);

/// W_n -> W_{n-1}. Throws Error on length 1.
WittVector frobenius(const WittVector& a);
/// (0, a_0, ..., a_{length-2}); length defaults to a's and may be at most one more.
WittVector verschiebung(const WittVector& a, std::optional<int> length = std::nullopt);
WittVector teichmuller(int p, int n, const mpz_class& a, CoefficientRing ring = {});
/// First `length` coordinates.
WittVector truncate(const WittVector& a, int length);

/// A finite commutative ring by tables over elements 0..size-1.
struct FiniteRing {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> add;
  std::vector<std::vector<int>> mul;
  int zero = 0;
  int one = 0;

  int size() const { return static_cast<int>(elements.size()); }
};

FiniteRing integers_mod(int m);
/// Exhaustive check of the commutative ring axioms.
Report validate_ring(const FiniteRing& r);
/// Additive inverse by table search.
int ring_negate(const FiniteRing& r, int a);
bool is_ring_homomorphism(const FiniteRing& a, const FiniteRing& b, const std::vector<int>& map);

/// W_n(A) with carrier the coordinate tuples over A, element index
/// Σ a_k |A|^k, and operations by the structure polynomials evaluated in A.
/// Throws BoundExceeded if |A|^n exceeds `bound`.
FiniteRing greenberg_affine(int p, int n, const FiniteRing& a, std::size_t bound = 4096);
/// Coordinatewise map W_n(A) -> W_n(B) induced by a ring map A -> B.
std::vector<int> greenberg_map(int n, const FiniteRing& a, const FiniteRing& b, const std::vector<int>& map);

/// Symbolic check of the multiplication (a,x)(b,y) = (ab, ay + bx + xy) on
/// pairs with componentwise addition, and of a -> (a, 0) being a ring map.
struct RingRuleCheck {
  bool commutative = false;
  bool associative = false;
  bool unital = false;
  bool distributive = false;
  bool embedding_is_homomorphism = false;

  bool holds() const {
    return commutative && associative && unital && distributive && embedding_is_homomorphism;
  }
};
RingRuleCheck check_extension_ring_rule();

}  // namespace catsite
