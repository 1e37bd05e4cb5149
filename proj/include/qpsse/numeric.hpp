// Copyright 2026 The qpsse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPSSE_NUMERIC_HPP_
#define QPSSE_NUMERIC_HPP_

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpsse {

// Arbitrary-precision rational. mpq_class keeps values canonical (lowest
// terms, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonicalized num/den; the raw two-argument mpq_class constructor is not.
inline Rational MakeRational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p/q" or "p" (optional sign). Throws ParseError on anything else,
// including a zero denominator. Decimal points are rejected.
Rational ParseRational(std::string_view text);

// Canonical "p/q" text, or "p" when the denominator is 1.
std::string ToString(const Rational& value);

// Display-only conversion; never used on solver paths.
double ToDouble(const Rational& value);

// Univariate polynomial in the perturbation magnitude e with rational
// coefficients, stored sparsely (degree -> nonzero coefficient).
class EpsPolynomial {
 public:
  EpsPolynomial() = default;
  static EpsPolynomial Constant(const Rational& c);
  static EpsPolynomial Monomial(const Rational& coefficient, int degree);

  bool IsZero() const { return terms_.empty(); }
  // Lowest degree with a nonzero coefficient. Throws on the zero polynomial.
  int LowestDegree() const;
  const Rational& LowestCoefficient() const;
  Rational Coefficient(int degree) const;
  const std::map<int, Rational>& terms() const { return terms_; }

  Rational Evaluate(const Rational& eps) const;

  EpsPolynomial& operator+=(const EpsPolynomial& other);
  EpsPolynomial& operator-=(const EpsPolynomial& other);
  EpsPolynomial& operator*=(const EpsPolynomial& other);
  friend EpsPolynomial operator+(EpsPolynomial a, const EpsPolynomial& b) {
    return a += b;
  }
  friend EpsPolynomial operator-(EpsPolynomial a, const EpsPolynomial& b) {
    return a -= b;
  }
  friend EpsPolynomial operator*(EpsPolynomial a, const EpsPolynomial& b) {
    return a *= b;
  }
  friend bool operator==(const EpsPolynomial& a, const EpsPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  // Text form such as "1/3*e^2 + e^4" or "1"; the zero polynomial is "0".
  std::string ToString() const;
  static EpsPolynomial Parse(std::string_view text);

 private:
  void Add(int degree, const Rational& coefficient);
  std::map<int, Rational> terms_;
};

Rational PolyEval(const EpsPolynomial& p, const Rational& eps);

// True iff lim_{e->0+} num(e)/den(e) = 0. Both inputs must be nonzero with a
// positive lowest-order coefficient; otherwise std::invalid_argument.
bool RatioLimitAtZeroIsZero(const EpsPolynomial& num, const EpsPolynomial& den);

}  // namespace qpsse

#endif  // QPSSE_NUMERIC_HPP_
