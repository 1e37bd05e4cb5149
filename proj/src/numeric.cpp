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

#include "qpsse/numeric.hpp"

#include <cctype>
#include <sstream>

namespace qpsse {
namespace {

bool IsDigits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string_view s = Trim(text);
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : body.substr(slash + 1);
  if (!IsDigits(num) || !IsDigits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (!s.empty() && s.front() == '-') n = -n;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string ToString(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double ToDouble(const Rational& value) { return value.get_d(); }

EpsPolynomial EpsPolynomial::Constant(const Rational& c) {
  return Monomial(c, 0);
}

EpsPolynomial EpsPolynomial::Monomial(const Rational& coefficient, int degree) {
  if (degree < 0) throw std::invalid_argument("negative polynomial degree");
  EpsPolynomial p;
  p.Add(degree, coefficient);
  return p;
}

void EpsPolynomial::Add(int degree, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(degree, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

int EpsPolynomial::LowestDegree() const {
  if (terms_.empty()) throw std::invalid_argument("zero polynomial has no degree");
  return terms_.begin()->first;
}

const Rational& EpsPolynomial::LowestCoefficient() const {
  if (terms_.empty()) throw std::invalid_argument("zero polynomial has no degree");
  return terms_.begin()->second;
}

Rational EpsPolynomial::Coefficient(int degree) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational EpsPolynomial::Evaluate(const Rational& eps) const {
  // Horner over the sparse degrees, highest first.
  Rational acc = 0;
  int prev = -1;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (prev >= 0) {
      for (int k = it->first; k < prev; ++k) acc *= eps;
    }
    acc += it->second;
    prev = it->first;
  }
  for (int k = 0; k < prev; ++k) acc *= eps;
  return acc;
}

EpsPolynomial& EpsPolynomial::operator+=(const EpsPolynomial& other) {
  for (const auto& [d, c] : other.terms_) Add(d, c);
  return *this;
}

EpsPolynomial& EpsPolynomial::operator-=(const EpsPolynomial& other) {
  for (const auto& [d, c] : other.terms_) Add(d, -c);
  return *this;
}

EpsPolynomial& EpsPolynomial::operator*=(const EpsPolynomial& other) {
  EpsPolynomial out;
  for (const auto& [d1, c1] : terms_) {
    for (const auto& [d2, c2] : other.terms_) out.Add(d1 + d2, c1 * c2);
  }
  terms_ = std::move(out.terms_);
  return *this;
}

std::string EpsPolynomial::ToString() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [degree, coeff] : terms_) {
    Rational mag = abs(coeff);
    if (first) {
      if (coeff < 0) out << "-";
    } else {
      out << (coeff < 0 ? " - " : " + ");
    }
    first = false;
    if (degree == 0) {
      out << qpsse::ToString(mag);
      continue;
    }
    if (mag != 1) out << qpsse::ToString(mag) << "*";
    out << "e";
    if (degree != 1) out << "^" << degree;
  }
  return out.str();
}

EpsPolynomial EpsPolynomial::Parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.empty()) throw ParseError("empty polynomial");
  EpsPolynomial result;
  size_t pos = 0;
  while (pos < compact.size()) {
    bool negative = false;
    if (compact[pos] == '+' || compact[pos] == '-') {
      negative = compact[pos] == '-';
      ++pos;
    }
    size_t end = pos;
    while (end < compact.size() && compact[end] != '+' && compact[end] != '-') {
      ++end;
    }
    std::string_view term(compact.data() + pos, end - pos);
    if (term.empty()) throw ParseError("malformed polynomial '" + compact + "'");
    Rational coeff = 1;
    int degree = 0;
    const auto e_pos = term.find('e');
    if (e_pos == std::string_view::npos) {
      coeff = ParseRational(term);
    } else {
      std::string_view head = term.substr(0, e_pos);
      std::string_view tail = term.substr(e_pos + 1);
      if (!head.empty() && head.back() == '*') head.remove_suffix(1);
      if (!head.empty()) coeff = ParseRational(head);
      degree = 1;
      if (!tail.empty()) {
        if (tail.front() != '^' || !IsDigits(tail.substr(1))) {
          throw ParseError("malformed exponent in '" + std::string(term) + "'");
        }
        degree = std::stoi(std::string(tail.substr(1)));
      }
    }
    result.Add(degree, negative ? Rational(-coeff) : coeff);
    pos = end;
  }
  return result;
}

Rational PolyEval(const EpsPolynomial& p, const Rational& eps) {
  return p.Evaluate(eps);
}

bool RatioLimitAtZeroIsZero(const EpsPolynomial& num, const EpsPolynomial& den) {
  if (num.IsZero() || den.IsZero()) {
    throw std::invalid_argument("ratio limit of a zero polynomial");
  }
  if (num.LowestCoefficient() <= 0 || den.LowestCoefficient() <= 0) {
    throw std::invalid_argument("ratio limit needs positive leading-order terms");
  }
  return num.LowestDegree() > den.LowestDegree();
}

}  // namespace qpsse
