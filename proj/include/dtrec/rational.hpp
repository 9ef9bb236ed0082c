#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dtrec {

// Exact rational number with unbounded integer numerator and denominator.
// Thin wrapper over GMP's mpq_class; always kept canonical (gcd 1, den > 0).
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long long n) : v_(static_cast<long>(n)) {}
  Rational(int n) : v_(n) {}

  Rational(long long num, long long den)
      : v_(static_cast<long>(num), static_cast<long>(den)) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }

  static Rational from_decimal_strings(const std::string& num, const std::string& den) {
    mpq_class q;
    if (mpz_set_str(q.get_num_mpz_t(), num.c_str(), 10) != 0)
      throw std::invalid_argument("Rational: bad numerator '" + num + "'");
    if (mpz_set_str(q.get_den_mpz_t(), den.c_str(), 10) != 0)
      throw std::invalid_argument("Rational: bad denominator '" + den + "'");
    if (q.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
    q.canonicalize();
    Rational r;
    r.v_ = q;
    return r;
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  std::string num_string() const { return v_.get_num().get_str(); }
  std::string den_string() const { return v_.get_den().get_str(); }

  // True when the numerator (resp. denominator) fits a signed 64-bit integer.
  bool num_fits_i64() const { return mpz_fits_slong_p(v_.get_num_mpz_t()) != 0; }
  bool den_fits_i64() const { return mpz_fits_slong_p(v_.get_den_mpz_t()) != 0; }
  long long num_i64() const { return mpz_get_si(v_.get_num_mpz_t()); }
  long long den_i64() const { return mpz_get_si(v_.get_den_mpz_t()); }

  std::string str() const {
    if (is_integer()) return num_string();
    return num_string() + "/" + den_string();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

private:
  mpq_class v_;
};

}  // namespace dtrec
