#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "ncycle/bigint.hpp"
#include "ncycle/counting.hpp"

namespace ncycle {

/// Polynomial in one variable with exact integer coefficients, stored
/// constant term first and kept normalized (no trailing zeros).
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);
  IntPolynomial(std::initializer_list<long> coefficients);

  static IntPolynomial constant(const BigInt& c);
  static IntPolynomial monomial(int degree, const BigInt& c = 1);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coefficient(int d) const;
  bool is_constant() const { return degree() <= 0; }

  double evaluate(double x) const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) {
    return a += b;
  }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) {
    return a -= b;
  }
  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator*(const BigInt& c, const IntPolynomial& p);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  /// "x^3 - 9x", "x^2 - 4", "0".
  std::string to_string() const;
  /// Coefficient array, constant first, e.g. "[0,-9,0,1]".
  std::string to_json() const;

 private:
  void normalize();
  std::vector<BigInt> coeffs_;
};

/// Initial condition for R_1 in the modified Chebyshev recurrence.
enum class R1Choice {
  as_printed,        // R_1 = 1
  degree_consistent  // R_1 = x
};

/// R_0 = 2, R_1 per choice, R_{k+1} = x R_k - (2N-1) R_{k-1}.
IntPolynomial chebyshev_R(int k, int N, R1Choice r1 = R1Choice::degree_consistent);

/// R_n, plus 2 when n is even. n >= 1.
IntPolynomial P_from_recurrence(int n, int N,
                                R1Choice r1 = R1Choice::degree_consistent);

/// The monic degree-n polynomial whose image under standard cyclic reduction
/// is exactly Q_n, by back-substitution through
///   x^j -> Q_j + sum_{k<j} s[j][k] Q_k.
/// n >= 1.
IntPolynomial P_from_triangle(int n, int N);

struct QIdentityReport {
  int length = 0;
  int alphabet_size = 1;
  /// Image is exactly Q_n.
  bool exact = false;
  /// Image is Q_n + c * e for some integer c (recorded below).
  bool up_to_constant = false;
  BigInt identity_constant;
  std::vector<std::string> violations;
};

/// Expands p in powers of x, replaces each x^j by its census, and compares
/// the combination with Q_n.
QIdentityReport verify_Q_identity(const IntPolynomial& p, int n, int N,
                                  const CensusOptions& options = {});

}  // namespace ncycle
