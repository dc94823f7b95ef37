#pragma once

#include <gmpxx.h>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace lupi {

using Rational = mpq_class;
/// Dense exponent tuple over p_1..p_n.
using Exponents = std::vector<unsigned>;

/// Graded-lex order: higher total degree first, then larger exponent of p_1,
/// then p_2, and so on.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

struct SymbolicLimits {
  int n_max_symbolic = 8;
};

/// Exact multivariate polynomial in p_1..p_n with rational coefficients.
/// Never stores a zero coefficient.
class SparsePolynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  explicit SparsePolynomial(int n);

  static SparsePolynomial constant(int n, const Rational& c);
  /// The monomial p_index (1-based).
  static SparsePolynomial variable(int n, int index);

  int n() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  Rational coefficient(const Exponents& e) const;
  void add_term(const Exponents& e, const Rational& c);

  Rational coefficient_sum() const;
  unsigned degree() const;
  /// Largest exponent of p_index among all terms (0 for the zero polynomial).
  unsigned degree_in(int index) const;

  Rational evaluate(std::span<const Rational> point) const;
  /// Exact evaluation at a double point (doubles are exact dyadic rationals),
  /// rounded once at the end.
  double evaluate(std::span<const double> point) const;

  SparsePolynomial& operator+=(const SparsePolynomial& rhs);
  SparsePolynomial& operator-=(const SparsePolynomial& rhs);
  SparsePolynomial& operator*=(const Rational& k);

  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) { return a += b; }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) { return a -= b; }
  friend SparsePolynomial operator*(SparsePolynomial a, const Rational& k) { return a *= k; }
  friend SparsePolynomial operator*(const Rational& k, SparsePolynomial a) { return a *= k; }
  friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b);
  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b);

  /// One term per line, graded-lex order:
  ///   num/den * p1^e1 p2^e2 ... pn^en
  std::string to_canonical_string() const;

 private:
  int n_;
  TermMap terms_;
};

/// D_i: partial derivative with respect to p_i.
SparsePolynomial differentiate(const SparsePolynomial& q, int i);
/// E_i: substitute p_i = 0.
SparsePolynomial eliminate(const SparsePolynomial& q, int i);
/// L_i = p_i E_i D_i: keeps exactly the terms linear in p_i.
SparsePolynomial project_linear(const SparsePolynomial& q, int i);

/// (p_1 + ... + p_n)^(n-1), fully expanded.
SparsePolynomial build_z0(int n, const SymbolicLimits& limits = {});

/// Z_k by the recursion Z_i = Z_{i-1} - p_i * (dZ_{i-1}/dp_i)|_{p_i=0}.
SparsePolynomial build_zk(int n, int k, const SymbolicLimits& limits = {});

/// Z_k as prod_{i<=k} (1 - L_i) applied to Z_0, expanded over subsets of {1..k}.
SparsePolynomial build_zk_operator_product(int n, int k, const SymbolicLimits& limits = {});

/// c_i = E_i[Z_{i-1}]: probability that the observed player wins on number i.
SparsePolynomial symbolic_ci(int n, int i, const SymbolicLimits& limits = {});

}  // namespace lupi
