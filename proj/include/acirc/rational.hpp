#pragma once

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "acirc/error.hpp"

namespace acirc {

/// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) : q_(num, den) {
    if (den == 0) throw Error(Errc::BadArgument, "zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Accepts "p" or "p/q" with an optional leading minus sign on p.
  static std::optional<Rational> try_parse(std::string_view s) {
    auto digits = [](std::string_view d) {
      if (d.empty()) return false;
      for (char c : d)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      return true;
    };
    std::string_view num = s, den;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      num = s.substr(0, slash);
      den = s.substr(slash + 1);
      if (!digits(den)) return std::nullopt;
    }
    std::string_view mag = num;
    if (!mag.empty() && mag.front() == '-') mag.remove_prefix(1);
    if (!digits(mag)) return std::nullopt;
    mpz_class n(std::string(num), 10);
    mpz_class d(den.empty() ? std::string("1") : std::string(den), 10);
    if (d == 0) return std::nullopt;
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  static Rational parse(std::string_view s) {
    auto r = try_parse(s);
    if (!r) throw Error(Errc::SyntaxError, "not a rational: '" + std::string(s) + "'");
    return *r;
  }

  /// Lowest terms; integers are written without "/1".
  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  /// The value as int64 when it is an integer that fits, otherwise nullopt.
  std::optional<std::int64_t> as_int64() const {
    if (!is_integer()) return std::nullopt;
    const mpz_class& n = q_.get_num();
    if (!n.fits_slong_p()) return std::nullopt;
    return static_cast<std::int64_t>(n.get_si());
  }

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(Errc::BadArgument, "division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

}  // namespace acirc
