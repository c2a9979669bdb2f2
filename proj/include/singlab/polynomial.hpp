#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singlab/error.hpp"
#include "singlab/rational.hpp"

namespace singlab {

using Exponents = std::vector<std::uint32_t>;

/// An ordered, immutable list of variable names.  Polynomials can only be
/// combined when their rings list the same names in the same order.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          fail(ErrorKind::VariableMismatch, "duplicate variable '" + names_[i] + "'");
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> find(const std::string& n) const {
    auto it = std::find(names_.begin(), names_.end(), n);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t index_of(const std::string& n) const {
    auto i = find(n);
    if (!i) fail(ErrorKind::VariableMismatch, "unknown variable '" + n + "'");
    return *i;
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

inline std::uint32_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline Exponents operator+(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// a - b; caller guarantees b divides a.
inline Exponents operator-(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by exponent vector with no zero
/// coefficients stored, so structural equality is polynomial equality.
class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational>;

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c) {
    Polynomial p(ring);
    if (c != 0) p.terms_.emplace(Exponents(p.ring_->size(), 0), c);
    return p;
  }

  static Polynomial variable(RingPtr ring, std::size_t index) {
    Polynomial p(ring);
    Exponents e(p.ring_->size(), 0);
    e.at(index) = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }

  static Polynomial variable(RingPtr ring, const std::string& name) {
    const auto i = ring->index_of(name);
    return variable(std::move(ring), i);
  }

  static Polynomial monomial(RingPtr ring, Exponents e, const Rational& c) {
    Polynomial p(ring);
    if (e.size() != p.ring_->size()) fail(ErrorKind::VariableMismatch, "exponent length mismatch");
    if (c != 0) p.terms_.emplace(std::move(e), c);
    return p;
  }

  const Ring& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && singlab::total_degree(terms_.begin()->first) == 0);
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponents(ring_->size(), 0)); }

  /// Maximum total degree, -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(singlab::total_degree(e)));
    return d;
  }

  /// Minimum total degree over the support (order of vanishing at 0), -1 for zero.
  int order() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      const int td = static_cast<int>(singlab::total_degree(e));
      if (d < 0 || td < d) d = td;
    }
    return d;
  }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e.at(var)));
    return d;
  }

  /// Variables that actually occur in the support.
  std::vector<std::size_t> support_variables() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < ring_->size(); ++i)
      if (degree_in(i) > 0) out.push_back(i);
    return out;
  }

  Polynomial homogeneous_part(int degree) const {
    Polynomial r(ring_);
    for (const auto& [e, c] : terms_)
      if (static_cast<int>(singlab::total_degree(e)) == degree) r.terms_.emplace(e, c);
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  Polynomial& operator/=(const Rational& s) {
    if (s == 0) fail(ErrorKind::Precondition, "division of polynomial by zero");
    for (auto& [e, c] : terms_) c /= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const Rational& s) { return a /= s; }

  friend Polynomial operator-(Polynomial a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_ring(b);
    Polynomial r(a.ring_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return *a.ring_ == *b.ring_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned e) const {
    Polynomial out = constant(ring_, 1);
    Polynomial base = *this;
    while (e > 0) {
      if (e & 1u) out *= base;
      e >>= 1u;
      if (e > 0) base *= base;
    }
    return out;
  }

  Polynomial derivative(std::size_t var) const {
    Polynomial r(ring_);
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponents d = e;
      d[var] -= 1;
      r.add_term(d, c * e[var]);
    }
    return r;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != ring_->size()) fail(ErrorKind::VariableMismatch, "evaluation point has wrong length");
    Rational total(0);
    for (const auto& [e, c] : terms_) {
      Rational m = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) m *= singlab::pow(point[i], e[i]);
      total += m;
    }
    return total;
  }

  double evaluate_double(const std::vector<double>& point) const {
    double total = 0;
    for (const auto& [e, c] : terms_) {
      double m = to_double(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) m *= point.at(i);
      total += m;
    }
    return total;
  }

  /// Replaces variable `var` by a rational value; the ring is unchanged.
  Polynomial substitute(std::size_t var, const Rational& value) const {
    Polynomial r(ring_);
    for (const auto& [e, c] : terms_) {
      Exponents d = e;
      const auto k = d.at(var);
      d[var] = 0;
      r.add_term(d, c * singlab::pow(value, k));
    }
    return r;
  }

  /// Replaces variable `var` by a polynomial over the same ring.
  Polynomial substitute(std::size_t var, const Polynomial& value) const {
    check_ring(value);
    std::vector<Polynomial> powers{constant(ring_, 1)};
    Polynomial r(ring_);
    for (const auto& [e, c] : terms_) {
      const auto k = e.at(var);
      while (powers.size() <= k) powers.push_back(powers.back() * value);
      Exponents d = e;
      d[var] = 0;
      r += powers[k] * monomial(ring_, d, c);
    }
    return r;
  }

  /// Coefficients as a polynomial in `var`: result[k] multiplies var^k.
  std::vector<Polynomial> coefficients_in(std::size_t var) const {
    const int deg = degree_in(var);
    std::vector<Polynomial> out(deg < 0 ? 0 : static_cast<std::size_t>(deg) + 1, Polynomial(ring_));
    for (const auto& [e, c] : terms_) {
      Exponents d = e;
      const auto k = d[var];
      d[var] = 0;
      out[k].add_term(d, c);
    }
    return out;
  }

  /// Re-expresses the polynomial over another ring, matching variables by name.
  Polynomial to_ring(const RingPtr& target) const {
    std::vector<std::size_t> map(ring_->size());
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      auto j = target->find(ring_->name(i));
      if (!j) {
        if (degree_in(i) > 0)
          fail(ErrorKind::VariableMismatch, "variable '" + ring_->name(i) + "' missing in target ring");
        map[i] = target->size();
      } else {
        map[i] = *j;
      }
    }
    Polynomial r(target);
    for (const auto& [e, c] : terms_) {
      Exponents d(target->size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) d[map[i]] = e[i];
      r.add_term(d, c);
    }
    return r;
  }

  /// Scales to coprime integer coefficients; the sign is left unchanged.
  Polynomial primitive_part() const {
    if (is_zero()) return *this;
    Integer den_lcm = 1;
    for (const auto& [e, c] : terms_)
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    Polynomial r = *this;
    r *= Rational(den_lcm);
    Integer g = 0;
    for (const auto& [e, c] : r.terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    r /= Rational(g);
    return r;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const {
    if (ring_ != o.ring_ && !(*ring_ == *o.ring_))
      fail(ErrorKind::VariableMismatch, "polynomials live over different variable lists");
  }

  RingPtr ring_;
  TermMap terms_;
};

inline std::string monomial_string(const Ring& ring, const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.name(i);
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

/// Terms are printed by decreasing total degree, ties by decreasing lex.
inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    const auto da = singlab::total_degree(a->first), db = singlab::total_degree(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::string out;
  bool first = true;
  for (const auto* t : order) {
    const Rational& c = t->second;
    const std::string mono = monomial_string(*ring_, t->first);
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

}  // namespace singlab
