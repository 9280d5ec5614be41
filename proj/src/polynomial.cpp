#include "ncycle/polynomial.hpp"

#include <map>
#include <sstream>

#include "ncycle/reduction.hpp"

namespace ncycle {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients)
    : coeffs_(std::move(coefficients)) {
  normalize();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coefficients) {
  for (long c : coefficients) coeffs_.emplace_back(c);
  normalize();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) {
  return IntPolynomial(std::vector<BigInt>{c});
}

IntPolynomial IntPolynomial::monomial(int degree, const BigInt& c) {
  std::vector<BigInt> coeffs(static_cast<std::size_t>(degree) + 1, 0);
  coeffs.back() = c;
  return IntPolynomial(std::move(coeffs));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coefficient(int d) const {
  if (d < 0 || d > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(d)];
}

double IntPolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + it->convert_to<double>();
  }
  return acc;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  normalize();
  return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator*(const BigInt& c, const IntPolynomial& p) {
  return IntPolynomial::constant(c) * p;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int d = degree(); d >= 0; --d) {
    BigInt c = coeffs_[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    if (d == 0 || c != 1) os << c;
    if (d >= 1) os << 'x';
    if (d >= 2) os << '^' << d;
    first = false;
  }
  return os.str();
}

std::string IntPolynomial::to_json() const {
  std::string s = "[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ',';
    s += coeffs_[i].str();
  }
  return s + "]";
}

IntPolynomial chebyshev_R(int k, int N, R1Choice r1) {
  if (k < 0 || N < 1) throw InvalidArgument("chebyshev_R needs k >= 0, N >= 1");
  const IntPolynomial x = IntPolynomial::monomial(1);
  IntPolynomial prev = IntPolynomial::constant(2);
  if (k == 0) return prev;
  IntPolynomial cur = r1 == R1Choice::as_printed ? IntPolynomial::constant(1) : x;
  const BigInt shift = 2 * N - 1;
  for (int i = 1; i < k; ++i) {
    IntPolynomial next = x * cur - shift * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

IntPolynomial P_from_recurrence(int n, int N, R1Choice r1) {
  if (n < 1) throw InvalidArgument("P_n is defined for n >= 1");
  IntPolynomial p = chebyshev_R(n, N, r1);
  if (n % 2 == 0) p += IntPolynomial::constant(2);
  return p;
}

IntPolynomial P_from_triangle(int n, int N) {
  if (n < 1 || N < 1) throw InvalidArgument("P_n is defined for n >= 1, N >= 1");
  const MomentTable s(N, n);
  // basis[k] has image Q_k; basis[0] = 1 since the empty word is Q_0 = e.
  std::vector<IntPolynomial> basis;
  basis.push_back(IntPolynomial::constant(1));
  for (int j = 1; j <= n; ++j) {
    IntPolynomial p = IntPolynomial::monomial(j);
    for (int k = 0; k < j; ++k) {
      if (s.at(j, k) != 0) p -= s.at(j, k) * basis[static_cast<std::size_t>(k)];
    }
    basis.push_back(std::move(p));
  }
  return basis.back();
}

QIdentityReport verify_Q_identity(const IntPolynomial& p, int n, int N,
                                  const CensusOptions& options) {
  if (n < 1) throw InvalidArgument("verify_Q_identity needs n >= 1");
  QIdentityReport report;
  report.length = n;
  report.alphabet_size = N;

  std::map<std::string, BigInt> image;
  for (int j = 0; j <= p.degree(); ++j) {
    const BigInt c = p.coefficient(j);
    if (c == 0) continue;
    for (const auto& [key, count] : census(j, N, options).counts) {
      image[key] += c * count;
    }
  }

  report.identity_constant = image.count("") ? image[""] : BigInt(0);
  image.erase("");

  bool words_ok = true;
  for (const Word& v : cyclically_reduced_words(n, N)) {
    const std::string key = to_alpha(v);
    auto it = image.find(key);
    const BigInt got = it == image.end() ? BigInt(0) : it->second;
    if (got != 1) {
      words_ok = false;
      report.violations.push_back("coefficient of \"" + key + "\" is " +
                                  got.str() + ", expected 1");
    }
    if (it != image.end()) image.erase(it);
  }
  for (const auto& [key, c] : image) {
    if (c != 0) {
      words_ok = false;
      report.violations.push_back("unexpected term \"" + key +
                                  "\" with coefficient " + c.str());
    }
  }
  report.up_to_constant = words_ok;
  report.exact = words_ok && report.identity_constant == 0;
  if (words_ok && !report.exact) {
    report.violations.push_back("identity coefficient is " +
                                report.identity_constant.str());
  }
  return report;
}

}  // namespace ncycle
