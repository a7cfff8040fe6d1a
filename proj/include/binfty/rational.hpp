#pragma once

#include <gmpxx.h>

#include <string>

#include "binfty/errors.hpp"

namespace binfty {

// mpq_class keeps numerator/denominator reduced after every arithmetic op;
// values built from raw parts must go through make_rational.
using Rational = mpq_class;

inline Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(mpz_class(num), mpz_class(den));
}

inline Rational inverse(const Rational& a) {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of 0");
  return Rational(1) / a;
}

enum class ArithOp { add, mul, neg, inv };

inline Rational rational_arith(const Rational& a, const Rational& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::mul: return a * b;
    case ArithOp::neg: return -a;
    case ArithOp::inv: return inverse(a);
  }
  return a;
}

// Accepts "p", "-p", "p/q".
inline Rational parse_rational(const std::string& s) {
  auto bad = [&] { return Error(ErrorKind::ParseError, "bad rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+') throw bad();
  if (num[0] == '+') num = num.substr(1);
  return make_rational(mpz_class(num), mpz_class(den));
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline int sign_of_parity(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace binfty
