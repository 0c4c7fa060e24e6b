#include "catsite/witt.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace catsite {

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(int vars) : vars_(vars) {
  if (vars < 0 || vars > kMaxVars) throw Error("polynomial variable count " + std::to_string(vars) + " out of range");
}

Polynomial Polynomial::constant(int vars, const mpz_class& c) {
  Polynomial p(vars);
  p.add_term(0, c);
  return p;
}

Polynomial Polynomial::variable(int vars, int i) {
  Polynomial p(vars);
  if (i < 0 || i >= vars) throw Error("variable index out of range");
  p.add_term(Key{1} << (8 * i), 1);
  return p;
}

void Polynomial::add_term(Key k, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) {
    int t = 0;
    for (int i = 0; i < vars_; ++i) t += exponent(k, i);
    d = std::max(d, t);
  }
  return d;
}

std::vector<std::pair<std::vector<int>, mpz_class>> Polynomial::terms() const {
  std::vector<std::pair<std::vector<int>, mpz_class>> out;
  for (const auto& [k, c] : terms_) {
    std::vector<int> e(vars_);
    for (int i = 0; i < vars_; ++i) e[i] = exponent(k, i);
    out.emplace_back(std::move(e), c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

mpz_class Polynomial::coefficient(const std::vector<int>& exponents) const {
  if (static_cast<int>(exponents.size()) != vars_) throw Error("exponent vector has the wrong length");
  Key k = 0;
  for (int i = 0; i < vars_; ++i) {
    if (exponents[i] < 0 || exponents[i] > kMaxExponent) return 0;
    k |= Key(exponents[i]) << (8 * i);
  }
  const auto it = terms_.find(k);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.vars_ != vars_) throw Error("adding polynomials in different variable counts");
  Polynomial out = *this;
  for (const auto& [k, c] : o.terms_) out.add_term(k, c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.vars_ != vars_) throw Error("multiplying polynomials in different variable counts");
  if (degree() + o.degree() > kMaxExponent) throw Error("polynomial degree exceeds " + std::to_string(kMaxExponent));
  Polynomial out(vars_);
  out.terms_.reserve(terms_.size() * o.terms_.size() / 2 + 1);
  mpz_class t;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) {
      t = c1 * c2;
      out.add_term(k1 + k2, t);
    }
  return out;
}

Polynomial Polynomial::scaled(const mpz_class& c) const {
  if (c == 0) return Polynomial(vars_);
  Polynomial out = *this;
  for (auto& [k, v] : out.terms_) v *= c;
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (true) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e == 0) break;
    base = base * base;
  }
  return result;
}

std::optional<Polynomial> Polynomial::divide_exact(const mpz_class& d) const {
  Polynomial out = *this;
  for (auto& [k, c] : out.terms_) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  }
  return out;
}

Polynomial Polynomial::with_vars(int vars) const {
  Polynomial out(vars);
  for (const auto& [k, c] : terms_) {
    for (int i = vars; i < vars_; ++i)
      if (exponent(k, i) != 0) throw Error("cannot drop a variable that occurs");
    out.terms_.emplace(k, c);
  }
  return out;
}

Polynomial Polynomial::rename(int vars, const std::vector<int>& map) const {
  if (static_cast<int>(map.size()) != vars_) throw Error("variable map has the wrong length");
  Polynomial out(vars);
  for (const auto& [k, c] : terms_) {
    std::vector<int> e(vars, 0);
    for (int i = 0; i < vars_; ++i) {
      if (map[i] < 0 || map[i] >= vars) throw Error("variable map out of range");
      e[map[i]] += exponent(k, i);
    }
    Key nk = 0;
    for (int i = 0; i < vars; ++i) {
      if (e[i] > kMaxExponent) throw Error("exponent overflow in rename");
      nk |= Key(e[i]) << (8 * i);
    }
    out.add_term(nk, c);
  }
  return out;
}

mpz_class Polynomial::evaluate(const std::vector<mpz_class>& values) const {
  if (static_cast<int>(values.size()) != vars_) throw Error("evaluation point has the wrong length");
  std::vector<int> top(vars_, 0);
  for (const auto& [k, c] : terms_)
    for (int i = 0; i < vars_; ++i) top[i] = std::max(top[i], exponent(k, i));
  std::vector<std::vector<mpz_class>> powers(vars_);
  for (int i = 0; i < vars_; ++i) {
    powers[i].assign(top[i] + 1, 1);
    for (int e = 1; e <= top[i]; ++e) powers[i][e] = powers[i][e - 1] * values[i];
  }
  mpz_class sum = 0, t;
  for (const auto& [k, c] : terms_) {
    t = c;
    for (int i = 0; i < vars_; ++i)
      if (const int e = exponent(k, i)) t *= powers[i][e];
    sum += t;
  }
  return sum;
}

mpz_class Polynomial::evaluate_mod(const std::vector<mpz_class>& values, const mpz_class& m) const {
  if (static_cast<int>(values.size()) != vars_) throw Error("evaluation point has the wrong length");
  if (m <= 0) throw Error("modulus must be positive");
  std::vector<int> top(vars_, 0);
  for (const auto& [k, c] : terms_)
    for (int i = 0; i < vars_; ++i) top[i] = std::max(top[i], exponent(k, i));
  std::vector<std::vector<mpz_class>> powers(vars_);
  for (int i = 0; i < vars_; ++i) {
    powers[i].assign(top[i] + 1, 1);
    mpz_class v = values[i] % m;
    for (int e = 1; e <= top[i]; ++e) powers[i][e] = powers[i][e - 1] * v % m;
  }
  mpz_class sum = 0, t;
  for (const auto& [k, c] : terms_) {
    t = c % m;
    for (int i = 0; i < vars_; ++i)
      if (const int e = exponent(k, i)) t = t * powers[i][e] % m;
    sum += t;
  }
  sum %= m;
  if (sum < 0) sum += m;
  return sum;
}

bool Polynomial::operator==(const Polynomial& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (static_cast<int>(names.size()) != vars_) throw Error("variable names have the wrong length");
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Graded lexicographic order, highest first.
  auto sorted = terms();
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    int da = 0, db = 0;
    for (int e : a.first) da += e;
    for (int e : b.first) db += e;
    return da != db ? da > db : a.first > b.first;
  });
  for (const auto& [e, c] : sorted) {
    mpz_class magnitude = abs(c);
    out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    std::string mono;
    for (int i = 0; i < vars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out << magnitude.get_str();
    else if (magnitude == 1)
      out << mono;
    else
      out << magnitude.get_str() << "*" << mono;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Witt and structure polynomials

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

void require_prime(int p) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
}

mpz_class power(int p, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

// w_k in `vars` variables, reading x_i from variable offset + i.
Polynomial witt_polynomial(int p, int k, int vars, int offset) {
  Polynomial w(vars);
  for (int i = 0; i <= k; ++i)
    w = w + Polynomial::variable(vars, offset + i).pow(power(p, k - i).get_ui()).scaled(power(p, i));
  return w;
}

// Solves Σ_{i≤k} p^i P_i^(p^(k-i)) = target_k for P_0.. in turn.
std::vector<Polynomial> ghost_solve(int p, const std::vector<Polynomial>& targets, const char* what) {
  std::vector<Polynomial> solved;
  // raised[i] holds P_i^(p^(k-i)) for the current k.
  std::vector<Polynomial> raised;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    for (auto& r : raised) r = r.pow(p);
    Polynomial rest = targets[k];
    for (std::size_t i = 0; i < raised.size(); ++i) rest = rest - raised[i].scaled(power(p, static_cast<int>(i)));
    auto next = rest.divide_exact(power(p, static_cast<int>(k)));
    if (!next)
      throw Error(std::string("internal defect: ") + what + " polynomial " + std::to_string(k) +
                  " has a non-integral coefficient");
    solved.push_back(*next);
    raised.push_back(*next);
  }
  return solved;
}

void check_exponent_limit(int p, int n, int factor) {
  if (n < 1) throw Error("Witt vector length must be at least 1");
  mpz_class top = power(p, n - 1) * factor;
  if (top > Polynomial::kMaxExponent || 2 * n > Polynomial::kMaxVars)
    throw Error("structure polynomials for p=" + std::to_string(p) + ", n=" + std::to_string(n) +
                " exceed the supported degree " + std::to_string(Polynomial::kMaxExponent));
}

}  // namespace

std::vector<Polynomial> witt_polynomials(int p, int n) {
  require_prime(p);
  check_exponent_limit(p, n, 1);
  std::vector<Polynomial> out;
  for (int k = 0; k < n; ++k) out.push_back(witt_polynomial(p, k, n, 0));
  return out;
}

const StructurePolynomials& derive_structure_polynomials(int p, int n) {
  require_prime(p);
  check_exponent_limit(p, n, 2);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<StructurePolynomials>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{p, n}];
  if (slot) return *slot;

  const int vars = 2 * n;
  std::vector<Polynomial> sum, prod, negated, shifted;
  for (int k = 0; k < n; ++k) {
    const Polynomial wx = witt_polynomial(p, k, vars, 0);
    const Polynomial wy = witt_polynomial(p, k, vars, n);
    sum.push_back(wx + wy);
    prod.push_back(wx * wy);
    negated.push_back(-witt_polynomial(p, k, n, 0));
    if (k + 1 < n) shifted.push_back(witt_polynomial(p, k + 1, n, 0));
  }
  auto out = std::make_unique<StructurePolynomials>();
  out->p = p;
  out->n = n;
  out->add = ghost_solve(p, sum, "addition");
  out->mul = ghost_solve(p, prod, "multiplication");
  out->neg = ghost_solve(p, negated, "negation");
  out->frobenius = ghost_solve(p, shifted, "Frobenius");
  slot = std::move(out);
  return *slot;
}

bool check_ghost_compatibility(const StructurePolynomials& s) {
  const int n = s.n, p = s.p, vars = 2 * n;
  auto ghost_of = [&](const std::vector<Polynomial>& polys, int k) {
    const int v = polys.front().vars();
    Polynomial w(v);
    for (int i = 0; i <= k; ++i) w = w + polys[i].pow(power(p, k - i).get_ui()).scaled(power(p, i));
    return w;
  };
  for (int k = 0; k < n; ++k) {
    const Polynomial wx = witt_polynomial(p, k, vars, 0);
    const Polynomial wy = witt_polynomial(p, k, vars, n);
    if (!(ghost_of(s.add, k) == wx + wy)) return false;
    if (!(ghost_of(s.mul, k) == wx * wy)) return false;
    if (!(ghost_of(s.neg, k) == -witt_polynomial(p, k, n, 0))) return false;
    if (k + 1 < n && !(ghost_of(s.frobenius, k) == witt_polynomial(p, k + 1, n, 0))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Witt vectors

namespace {

void reduce(WittVector& a) {
  if (a.ring.modulus == 0) return;
  for (auto& c : a.coords) {
    c %= a.ring.modulus;
    if (c < 0) c += a.ring.modulus;
  }
}

void require_compatible(const WittVector& a, const WittVector& b) {
  if (a.p != b.p) throw Error("Witt vectors over different primes");
  if (a.length() != b.length()) throw Error("Witt vectors of different lengths");
  if (!(a.ring == b.ring)) throw Error("Witt vectors over different coefficient rings");
}

mpz_class eval(const Polynomial& poly, const std::vector<mpz_class>& values, const CoefficientRing& ring) {
  return ring.modulus == 0 ? poly.evaluate(values) : poly.evaluate_mod(values, ring.modulus);
}

WittVector apply(const std::vector<Polynomial>& polys, const std::vector<mpz_class>& values, const WittVector& like,
                 std::size_t length) {
  WittVector out{like.p, like.ring, {}};
  for (std::size_t k = 0; k < length; ++k) out.coords.push_back(eval(polys[k], values, like.ring));
  return out;
}

}  // namespace

WittVector make_witt(int p, std::vector<mpz_class> coords, CoefficientRing ring) {
  require_prime(p);
  if (coords.empty()) throw Error("Witt vector length must be at least 1");
  if (ring.modulus < 0) throw Error("negative modulus");
  WittVector a{p, ring, std::move(coords)};
  reduce(a);
  return a;
}

WittVector witt_zero(int p, int n, CoefficientRing ring) {
  return make_witt(p, std::vector<mpz_class>(std::max(n, 0), 0), ring);
}

WittVector witt_one(int p, int n, CoefficientRing ring) { return teichmuller(p, n, 1, ring); }

WittVector witt_add(const WittVector& a, const WittVector& b) {
  require_compatible(a, b);
  const auto& s = derive_structure_polynomials(a.p, a.length());
  std::vector<mpz_class> values = a.coords;
  values.insert(values.end(), b.coords.begin(), b.coords.end());
  return apply(s.add, values, a, a.coords.size());
}

WittVector witt_mul(const WittVector& a, const WittVector& b) {
  require_compatible(a, b);
  const auto& s = derive_structure_polynomials(a.p, a.length());
  std::vector<mpz_class> values = a.coords;
  values.insert(values.end(), b.coords.begin(), b.coords.end());
  return apply(s.mul, values, a, a.coords.size());
}

WittVector witt_neg(const WittVector& a) {
  const auto& s = derive_structure_polynomials(a.p, a.length());
  return apply(s.neg, a.coords, a, a.coords.size());
}

WittVector witt_integer(int p, int n, long k, CoefficientRing ring) {
  WittVector result = witt_zero(p, n, ring);
  WittVector base = witt_one(p, n, ring);
  unsigned long m = k < 0 ? 0ul - static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
  while (m) {
    if (m & 1ul) result = witt_add(result, base);
    m >>= 1u;
    if (m) base = witt_add(base, base);
  }
  return k < 0 ? witt_neg(result) : result;
}

std::vector<mpz_class> ghost(const WittVector& a) {
  std::vector<mpz_class> out;
  for (const auto& w : witt_polynomials(a.p, a.length())) out.push_back(eval(w, a.coords, a.ring));
  return out;
}

WittVector frobenius(const WittVector& a) {
  if (a.length() < 2) throw Error("Frobenius needs length at least 2");
  const auto& s = derive_structure_polynomials(a.p, a.length());
  return apply(s.frobenius, a.coords, a, a.coords.size() - 1);
}

WittVector verschiebung(const WittVector& a, std::optional<int> length) {
  const int n = length.value_or(a.length());
  if (n < 1 || n > a.length() + 1) throw Error("Verschiebung length out of range");
  WittVector out{a.p, a.ring, std::vector<mpz_class>(n, 0)};
  for (int k = 1; k < n; ++k) out.coords[k] = a.coords[k - 1];
  return out;
}

WittVector teichmuller(int p, int n, const mpz_class& a, CoefficientRing ring) {
  std::vector<mpz_class> coords(std::max(n, 0), 0);
  if (!coords.empty()) coords[0] = a;
  return make_witt(p, std::move(coords), ring);
}

WittVector truncate(const WittVector& a, int length) {
  if (length < 1 || length > a.length()) throw Error("truncation length out of range");
  return {a.p, a.ring, std::vector<mpz_class>(a.coords.begin(), a.coords.begin() + length)};
}

// ---------------------------------------------------------------------------
// Finite rings

FiniteRing integers_mod(int m) {
  if (m < 1) throw Error("modulus must be positive");
  FiniteRing r;
  for (int a = 0; a < m; ++a) r.elements.push_back(std::to_string(a));
  r.add.assign(m, std::vector<int>(m));
  r.mul.assign(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      r.add[a][b] = (a + b) % m;
      r.mul[a][b] = (a * b) % m;
    }
  r.zero = 0;
  r.one = 1 % m;
  return r;
}

Report validate_ring(const FiniteRing& r) {
  Report rep;
  const int n = r.size();
  if (n == 0) {
    rep.add("ring has no elements");
    return rep;
  }
  auto square = [n](const std::vector<std::vector<int>>& t) {
    if (static_cast<int>(t.size()) != n) return false;
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != n) return false;
      for (int v : row)
        if (v < 0 || v >= n) return false;
    }
    return true;
  };
  if (!square(r.add) || !square(r.mul)) {
    rep.add("operation tables are not " + std::to_string(n) + "x" + std::to_string(n) + " over the carrier");
    return rep;
  }
  if (r.zero < 0 || r.zero >= n || r.one < 0 || r.one >= n) {
    rep.add("zero or one out of range");
    return rep;
  }
  auto name = [&](int a) { return r.elements[a]; };
  auto first = [&](bool& flag, std::string v) {
    if (!flag) rep.add(std::move(v));
    flag = true;
  };
  bool comm_add = false, comm_mul = false, unit_add = false, unit_mul = false, inv = false, assoc_add = false,
       assoc_mul = false, dist = false;
  for (int a = 0; a < n; ++a) {
    if (r.add[a][r.zero] != a) first(unit_add, "zero is not an additive identity at " + name(a));
    if (r.mul[a][r.one] != a) first(unit_mul, "one is not a multiplicative identity at " + name(a));
    if (std::find(r.add[a].begin(), r.add[a].end(), r.zero) == r.add[a].end())
      first(inv, name(a) + " has no additive inverse");
    for (int b = 0; b < n; ++b) {
      if (r.add[a][b] != r.add[b][a]) first(comm_add, "addition not commutative at " + name(a) + ", " + name(b));
      if (r.mul[a][b] != r.mul[b][a]) first(comm_mul, "multiplication not commutative at " + name(a) + ", " + name(b));
      for (int c = 0; c < n; ++c) {
        const std::string at = " at " + name(a) + ", " + name(b) + ", " + name(c);
        if (r.add[r.add[a][b]][c] != r.add[a][r.add[b][c]]) first(assoc_add, "addition not associative" + at);
        if (r.mul[r.mul[a][b]][c] != r.mul[a][r.mul[b][c]]) first(assoc_mul, "multiplication not associative" + at);
        if (r.mul[a][r.add[b][c]] != r.add[r.mul[a][b]][r.mul[a][c]]) first(dist, "not distributive" + at);
      }
    }
  }
  return rep;
}

int ring_negate(const FiniteRing& r, int a) {
  for (int b = 0; b < r.size(); ++b)
    if (r.add[a][b] == r.zero) return b;
  throw Error("element " + r.elements.at(a) + " has no additive inverse");
}

bool is_ring_homomorphism(const FiniteRing& a, const FiniteRing& b, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != a.size()) return false;
  for (int v : map)
    if (v < 0 || v >= b.size()) return false;
  if (map[a.one] != b.one) return false;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (map[a.add[x][y]] != b.add[map[x]][map[y]] || map[a.mul[x][y]] != b.mul[map[x]][map[y]]) return false;
  return true;
}

namespace {

// An integer polynomial with coefficients pushed into a finite ring.
struct RingPolynomial {
  std::vector<std::pair<int, std::vector<int>>> terms;  // (coefficient element, exponents)
};

RingPolynomial into_ring(const Polynomial& poly, const FiniteRing& r) {
  // Multiples of one, up to the additive order of one.
  std::vector<int> multiples{r.zero};
  while (true) {
    const int next = r.add[multiples.back()][r.one];
    if (next == r.zero) break;
    multiples.push_back(next);
  }
  const mpz_class order = static_cast<unsigned long>(multiples.size());
  RingPolynomial out;
  for (auto& [e, c] : poly.terms()) {
    mpz_class k = c % order;
    if (k < 0) k += order;
    const int coef = multiples[k.get_ui()];
    if (coef != r.zero) out.terms.emplace_back(coef, e);
  }
  return out;
}

int evaluate_in(const RingPolynomial& poly, const FiniteRing& r, const std::vector<std::vector<int>>& powers) {
  int sum = r.zero;
  for (const auto& [coef, e] : poly.terms) {
    int t = coef;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t = r.mul[t][powers[i][e[i]]];
    sum = r.add[sum][t];
  }
  return sum;
}

std::vector<int> decode(int index, int base, int n) {
  std::vector<int> out(n);
  for (int k = 0; k < n; ++k, index /= base) out[k] = index % base;
  return out;
}

int encode(const std::vector<int>& coords, int base) {
  int index = 0;
  for (auto it = coords.rbegin(); it != coords.rend(); ++it) index = index * base + *it;
  return index;
}

}  // namespace

FiniteRing greenberg_affine(int p, int n, const FiniteRing& a, std::size_t bound) {
  require_prime(p);
  if (n < 1) throw Error("Witt vector length must be at least 1");
  const int q = a.size();
  std::size_t size = 1;
  for (int k = 0; k < n; ++k) {
    size *= static_cast<std::size_t>(q);
    if (size > bound) throw BoundExceeded("Witt vector ring size", bound);
  }
  const auto& s = derive_structure_polynomials(p, n);
  std::vector<RingPolynomial> add, mul;
  for (const auto& poly : s.add) add.push_back(into_ring(poly, a));
  for (const auto& poly : s.mul) mul.push_back(into_ring(poly, a));

  // powers[x][e] = x^e in A.
  int top = 1;
  for (const auto& poly : s.mul) top = std::max(top, poly.degree());
  std::vector<std::vector<int>> power_table(q, std::vector<int>(top + 1));
  for (int x = 0; x < q; ++x) {
    power_table[x][0] = a.one;
    for (int e = 1; e <= top; ++e) power_table[x][e] = a.mul[power_table[x][e - 1]][x];
  }

  const int m = static_cast<int>(size);
  FiniteRing w;
  w.add.assign(m, std::vector<int>(m));
  w.mul.assign(m, std::vector<int>(m));
  std::vector<std::vector<int>> powers(2 * n);
  for (int u = 0; u < m; ++u) {
    const auto cu = decode(u, q, n);
    std::string label = "(";
    for (int k = 0; k < n; ++k) label += (k ? "," : "") + a.elements[cu[k]];
    w.elements.push_back(label + ")");
    for (int v = 0; v < m; ++v) {
      const auto cv = decode(v, q, n);
      for (int k = 0; k < n; ++k) {
        powers[k] = power_table[cu[k]];
        powers[n + k] = power_table[cv[k]];
      }
      std::vector<int> sum(n), prod(n);
      for (int k = 0; k < n; ++k) {
        sum[k] = evaluate_in(add[k], a, powers);
        prod[k] = evaluate_in(mul[k], a, powers);
      }
      w.add[u][v] = encode(sum, q);
      w.mul[u][v] = encode(prod, q);
    }
  }
  std::vector<int> zero(n, a.zero), one(n, a.zero);
  one[0] = a.one;
  w.zero = encode(zero, q);
  w.one = encode(one, q);
  return w;
}

std::vector<int> greenberg_map(int n, const FiniteRing& a, const FiniteRing& b, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != a.size()) throw Error("ring map has the wrong length");
  std::size_t size = 1;
  for (int k = 0; k < n; ++k) size *= static_cast<std::size_t>(a.size());
  std::vector<int> out(size);
  for (std::size_t u = 0; u < size; ++u) {
    auto coords = decode(static_cast<int>(u), a.size(), n);
    for (int& c : coords) c = map[c];
    out[u] = encode(coords, b.size());
  }
  return out;
}

RingRuleCheck check_extension_ring_rule() {
  // Variables a, x, b, y, c, z.
  constexpr int vars = 6;
  using Pair = std::pair<Polynomial, Polynomial>;
  auto var = [](int i) { return Polynomial::variable(vars, i); };
  auto mul = [](const Pair& u, const Pair& v) {
    return Pair{u.first * v.first, u.first * v.second + v.first * u.second + u.second * v.second};
  };
  auto add = [](const Pair& u, const Pair& v) { return Pair{u.first + v.first, u.second + v.second}; };
  const Pair ax{var(0), var(1)}, by{var(2), var(3)}, cz{var(4), var(5)};
  const Pair one{Polynomial::constant(vars, 1), Polynomial(vars)};

  RingRuleCheck out;
  out.commutative = mul(ax, by) == mul(by, ax);
  out.associative = mul(mul(ax, by), cz) == mul(ax, mul(by, cz));
  out.unital = mul(ax, one) == ax && mul(one, ax) == ax;
  out.distributive = mul(ax, add(by, cz)) == add(mul(ax, by), mul(ax, cz));
  const Pair a0{var(0), Polynomial(vars)}, b0{var(2), Polynomial(vars)};
  out.embedding_is_homomorphism = mul(a0, b0) == Pair{var(0) * var(2), Polynomial(vars)} &&
                                  add(a0, b0) == Pair{var(0) + var(2), Polynomial(vars)};
  return out;
}

}  // namespace catsite
