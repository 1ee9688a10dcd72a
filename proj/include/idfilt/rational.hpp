/* Copyright 2026 The idfilt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#ifndef IDFILT_RATIONAL_HPP
#define IDFILT_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace idfilt {

// Small exact rational used for levels and invariant values.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    normalize();
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  long long floor() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  long long ceil() const {
    long long q = num_ / den_;
    if (num_ % den_ != 0 && num_ > 0) ++q;
    return q;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_), checked((__int128)a.den_ * b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked((__int128)a.num_ * b.num_), checked((__int128)a.den_ * b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("rational division by zero");
    return Rational(checked((__int128)a.num_ * b.den_), checked((__int128)a.den_ * b.num_));
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    __int128 l = (__int128)a.num_ * b.den_, r = (__int128)b.num_ * a.den_;
    return l < r ? std::strong_ordering::less
                 : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }
  static Rational parse(const std::string& s) {
    try {
      size_t pos = 0;
      auto k = s.find('/');
      if (k == std::string::npos) {
        long long n = std::stoll(s, &pos);
        if (pos != s.size()) throw ParseError("bad rational '" + s + "'");
        return Rational(n);
      }
      std::string a = s.substr(0, k), b = s.substr(k + 1);
      size_t pa = 0, pb = 0;
      long long n = std::stoll(a, &pa), d = std::stoll(b, &pb);
      if (pa != a.size() || pb != b.size()) throw ParseError("bad rational '" + s + "'");
      if (d == 0) throw ParseError("zero denominator in '" + s + "'");
      return Rational(n, d);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad rational '" + s + "'");
    }
  }

 private:
  static long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw DomainError("rational overflow");
    return static_cast<long long>(v);
  }
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace idfilt

#endif
