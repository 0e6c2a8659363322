#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace amp1 {

/// Error raised by engine operations on malformed or mismatched data.
/// Everything user-facing (file parsing, witness validation, dimension
/// mismatches) throws this or a subclass; internal consistency failures
/// throw internal_error instead so callers can tell them apart.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A failure that can only come from a bug in the engine itself
/// (e.g. a sign check on an intermediate value that is provably zero).
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact rational number, always stored in lowest terms with a positive
/// denominator. Arithmetic is exact; there is no floating point anywhere
/// in the engine.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit on purpose for literals
  Rational(long n, long d) : v_(n, d) { canonicalize_checked(); }
  explicit Rational(const mpq_class& q) : v_(q) { canonicalize_checked(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  /// Parses "p" or "p/q" with optional leading '-'. Whitespace is not
  /// accepted here; the expression parser handles spacing.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw error("empty rational literal");
    const std::string s(text);
    // strict grammar: [+-]?digits ( '/' [+-]?digits )?  — no whitespace
    const auto bad = [&]() -> error {
      return error("malformed rational literal '" + s + "'");
    };
    auto check_int = [&](std::string_view part) {
      size_t i = 0;
      if (i < part.size() && (part[i] == '+' || part[i] == '-')) ++i;
      if (i == part.size()) throw bad();
      for (; i < part.size(); ++i)
        if (part[i] < '0' || part[i] > '9') throw bad();
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      check_int(text);
    } else {
      check_int(text.substr(0, slash));
      check_int(text.substr(slash + 1));
    }
    try {
      mpq_class q(s, 10);
      Rational r;
      r.v_ = q;
      r.canonicalize_checked();
      return r;
    } catch (const std::invalid_argument&) {
      throw bad();
    }
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  /// Value as a machine integer; requires an integral value in range.
  std::int64_t to_int() const {
    if (!is_integer()) throw error("rational " + str() + " is not an integer");
    if (!v_.get_num().fits_slong_p())
      throw error("integer " + str() + " out of machine range");
    return v_.get_num().get_si();
  }

  std::string str() const { return v_.get_str(); }

  Rational operator-() const { return Rational::raw(-v_); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw error("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  const mpq_class& raw_value() const { return v_; }

 private:
  // mpq_class arithmetic keeps results canonical, but the constructors do
  // not, so every entry point that builds from raw parts canonicalizes.
  void canonicalize_checked() {
    if (v_.get_den() == 0) throw error("zero denominator in rational");
    v_.canonicalize();
  }
  static Rational raw(mpq_class q) {
    Rational r;
    r.v_ = std::move(q);
    return r;
  }

  mpq_class v_;
};

}  // namespace amp1
