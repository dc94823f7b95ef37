#include "lupi/polynomial.hpp"

#include <numeric>
#include <sstream>

#include "lupi/errors.hpp"
#include "lupi/game.hpp"

namespace lupi {

namespace {

unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

void check_index(const SparsePolynomial& q, int i) {
  if (i < 1 || i > q.n()) {
    throw DomainError("variable index " + std::to_string(i) + " outside 1.." + std::to_string(q.n()));
  }
}

void check_symbolic_n(int n, const SymbolicLimits& limits) {
  require_game_size(n);
  if (n > limits.n_max_symbolic) {
    throw ResourceError("symbolic expansion for n=" + std::to_string(n) + " exceeds n_max_symbolic=" +
                        std::to_string(limits.n_max_symbolic));
  }
}

Rational factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

// All compositions of `total` into `parts` non-negative parts.
void for_each_composition(unsigned total, std::size_t parts, Exponents& cur, std::size_t pos,
                          const auto& visit) {
  if (pos + 1 == parts) {
    cur[pos] = total;
    visit(cur);
    return;
  }
  for (unsigned k = 0; k <= total; ++k) {
    cur[pos] = k;
    for_each_composition(total - k, parts, cur, pos + 1, visit);
  }
}

}  // namespace

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

SparsePolynomial::SparsePolynomial(int n) : n_(n) {
  if (n < 1) throw DomainError("polynomial needs at least one variable");
}

SparsePolynomial SparsePolynomial::constant(int n, const Rational& c) {
  SparsePolynomial q(n);
  q.add_term(Exponents(static_cast<std::size_t>(n), 0u), c);
  return q;
}

SparsePolynomial SparsePolynomial::variable(int n, int index) {
  SparsePolynomial q(n);
  check_index(q, index);
  Exponents e(static_cast<std::size_t>(n), 0u);
  e[static_cast<std::size_t>(index - 1)] = 1;
  q.add_term(e, 1);
  return q;
}

Rational SparsePolynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void SparsePolynomial::add_term(const Exponents& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_) {
    throw DomainError("exponent tuple length " + std::to_string(e.size()) + " != n=" + std::to_string(n_));
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational SparsePolynomial::coefficient_sum() const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

unsigned SparsePolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

unsigned SparsePolynomial::degree_in(int index) const {
  check_index(*this, index);
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<std::size_t>(index - 1)]);
  return d;
}

Rational SparsePolynomial::evaluate(std::span<const Rational> point) const {
  if (static_cast<int>(point.size()) != n_) throw DomainError("evaluation point has wrong length");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t k = 0; k < e.size(); ++k) {
      for (unsigned r = 0; r < e[k]; ++r) t *= point[k];
    }
    sum += t;
  }
  return sum;
}

double SparsePolynomial::evaluate(std::span<const double> point) const {
  std::vector<Rational> exact(point.begin(), point.end());
  return evaluate(std::span<const Rational>(exact)).get_d();
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& rhs) {
  if (rhs.n_ != n_) throw DomainError("polynomial variable counts differ");
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& rhs) {
  if (rhs.n_ != n_) throw DomainError("polynomial variable counts differ");
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(const Rational& k) {
  if (k == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= k;
  return *this;
}

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
  if (a.n_ != b.n_) throw DomainError("polynomial variable counts differ");
  SparsePolynomial out(a.n_);
  Exponents e(static_cast<std::size_t>(a.n_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
  return a.n_ == b.n_ && a.terms_ == b.terms_;
}

std::string SparsePolynomial::to_canonical_string() const {
  std::ostringstream os;
  for (const auto& [e, c] : terms_) {
    os << c.get_num() << '/' << c.get_den() << " *";
    for (std::size_t k = 0; k < e.size(); ++k) os << " p" << (k + 1) << '^' << e[k];
    os << '\n';
  }
  return os.str();
}

SparsePolynomial differentiate(const SparsePolynomial& q, int i) {
  check_index(q, i);
  const auto k = static_cast<std::size_t>(i - 1);
  SparsePolynomial out(q.n());
  for (const auto& [e, c] : q.terms()) {
    if (e[k] == 0) continue;
    Exponents d = e;
    d[k] -= 1;
    out.add_term(d, c * e[k]);
  }
  return out;
}

SparsePolynomial eliminate(const SparsePolynomial& q, int i) {
  check_index(q, i);
  const auto k = static_cast<std::size_t>(i - 1);
  SparsePolynomial out(q.n());
  for (const auto& [e, c] : q.terms()) {
    if (e[k] == 0) out.add_term(e, c);
  }
  return out;
}

SparsePolynomial project_linear(const SparsePolynomial& q, int i) {
  return SparsePolynomial::variable(q.n(), i) * eliminate(differentiate(q, i), i);
}

SparsePolynomial build_z0(int n, const SymbolicLimits& limits) {
  check_symbolic_n(n, limits);
  const auto m = static_cast<unsigned>(n - 1);
  const Rational m_fact = factorial(m);
  SparsePolynomial z(n);
  Exponents cur(static_cast<std::size_t>(n), 0u);
  for_each_composition(m, cur.size(), cur, 0, [&](const Exponents& e) {
    Rational coef = m_fact;
    for (unsigned k : e) coef /= factorial(k);
    z.add_term(e, coef);
  });
  return z;
}

SparsePolynomial build_zk(int n, int k, const SymbolicLimits& limits) {
  if (k < 0 || k > n) throw DomainError("k outside 0..n");
  SparsePolynomial z = build_z0(n, limits);
  for (int i = 1; i <= k; ++i) {
    z -= SparsePolynomial::variable(n, i) * eliminate(differentiate(z, i), i);
  }
  return z;
}

SparsePolynomial build_zk_operator_product(int n, int k, const SymbolicLimits& limits) {
  if (k < 0 || k > n) throw DomainError("k outside 0..n");
  const SparsePolynomial z0 = build_z0(n, limits);
  SparsePolynomial out(n);
  // prod (1 - L_i) = sum over subsets S of (-1)^|S| prod_{i in S} L_i; the L_i commute.
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    SparsePolynomial term = z0;
    int size = 0;
    for (int i = 1; i <= k && !term.is_zero(); ++i) {
      if (mask & (1u << (i - 1))) {
        term = project_linear(term, i);
        ++size;
      }
    }
    if (size % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  return out;
}

SparsePolynomial symbolic_ci(int n, int i, const SymbolicLimits& limits) {
  if (i < 1 || i > n) throw DomainError("index " + std::to_string(i) + " outside 1.." + std::to_string(n));
  return eliminate(build_zk(n, i - 1, limits), i);
}

}  // namespace lupi
