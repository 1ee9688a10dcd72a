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

#ifndef IDFILT_FIELD_HPP
#define IDFILT_FIELD_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace idfilt {

// F_{p^m}. Elements are encoded as integers whose base-p digits are the
// coefficients of a polynomial reduced modulo an irreducible of degree m.
class GaloisField {
 public:
  // Interned; references stay valid for the lifetime of the program.
  static const GaloisField& get(uint32_t p, uint32_t m, std::vector<uint32_t> modulus = {}) {
    static std::mutex mu;
    static std::map<std::pair<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>>,
                    std::unique_ptr<GaloisField>>
        registry;
    std::lock_guard<std::mutex> lock(mu);
    if (modulus.empty() && m > 1) modulus = default_modulus(p, m);
    auto key = std::make_pair(std::make_pair(p, m), modulus);
    auto it = registry.find(key);
    if (it != registry.end()) return *it->second;
    auto f = std::unique_ptr<GaloisField>(new GaloisField(p, m, modulus));
    auto& ref = *f;
    registry.emplace(key, std::move(f));
    return ref;
  }

  uint32_t p() const { return p_; }
  uint32_t m() const { return m_; }
  uint32_t q() const { return q_; }
  const std::vector<uint32_t>& modulus() const { return modulus_; }

  uint32_t add(uint32_t a, uint32_t b) const {
    if (m_ == 1) {
      uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    uint32_t r = 0, w = 1;
    for (uint32_t i = 0; i < m_; ++i) {
      uint32_t da = a % p_, db = b % p_;
      a /= p_;
      b /= p_;
      r += ((da + db) % p_) * w;
      w *= p_;
    }
    return r;
  }
  uint32_t neg(uint32_t a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    uint32_t r = 0, w = 1;
    for (uint32_t i = 0; i < m_; ++i) {
      uint32_t da = a % p_;
      a /= p_;
      r += ((p_ - da) % p_) * w;
      w *= p_;
    }
    return r;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
  uint32_t mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return static_cast<uint32_t>((uint64_t(a) * b) % p_);
    uint32_t l = log_[a] + log_[b];
    if (l >= q_ - 1) l -= q_ - 1;
    return exp_[l];
  }
  uint32_t inv(uint32_t a) const {
    if (a == 0) throw DomainError("division by zero in F_q");
    if (m_ == 1) return pow(a, p_ - 2);
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  uint32_t pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  // a^(1/p^e): the inverse of e-fold Frobenius.
  uint32_t frobenius_root(uint32_t a, int e) const {
    if (m_ == 1 || a == 0) return a;
    int k = ((-e) % int(m_) + int(m_)) % int(m_);
    for (int i = 0; i < k; ++i) a = pow(a, p_);
    return a;
  }
  static bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t k = 2; uint64_t(k) * k <= n; ++k)
      if (n % k == 0) return false;
    return true;
  }

  uint32_t frobenius(uint32_t a, int e) const {
    if (m_ == 1 || a == 0) return a;
    for (int i = 0; i < e % int(m_); ++i) a = pow(a, p_);
    return a;
  }

 private:
  GaloisField(uint32_t p, uint32_t m, std::vector<uint32_t> modulus)
      : p_(p), m_(m), modulus_(std::move(modulus)) {
    if (p < 2 || !is_prime(p)) throw DomainError("characteristic must be prime");
    if (m == 0) throw DomainError("extension degree must be positive");
    uint64_t q = 1;
    for (uint32_t i = 0; i < m; ++i) {
      q *= p;
      if (q > (1u << 20)) throw DomainError("field too large (q > 2^20)");
    }
    q_ = static_cast<uint32_t>(q);
    if (m == 1) return;
    if (modulus_.size() != m + 1 || modulus_.back() != 1)
      throw DomainError("modulus must be monic of degree m");
    build_tables();
  }


  // Plain polynomial product modulo the modulus on digit encodings.
  uint32_t slow_mul(uint32_t a, uint32_t b) const {
    std::vector<uint32_t> x(m_), y(m_), z(2 * m_, 0);
    for (uint32_t i = 0; i < m_; ++i) {
      x[i] = a % p_;
      a /= p_;
      y[i] = b % p_;
      b /= p_;
    }
    for (uint32_t i = 0; i < m_; ++i)
      for (uint32_t j = 0; j < m_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
    for (int k = int(2 * m_) - 1; k >= int(m_); --k) {
      uint32_t c = z[k];
      if (!c) continue;
      for (uint32_t i = 0; i <= m_; ++i)
        z[k - m_ + i] = (z[k - m_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    uint32_t r = 0, w = 1;
    for (uint32_t i = 0; i < m_; ++i) {
      r += z[i] * w;
      w *= p_;
    }
    return r;
  }

  void build_tables() {
    std::vector<uint32_t> primes;
    uint32_t n = q_ - 1;
    for (uint32_t k = 2; uint64_t(k) * k <= n; ++k)
      if (n % k == 0) {
        primes.push_back(k);
        while (n % k == 0) n /= k;
      }
    if (n > 1) primes.push_back(n);
    auto spow = [&](uint32_t a, uint64_t e) {
      uint32_t r = 1;
      while (e) {
        if (e & 1) r = slow_mul(r, a);
        a = slow_mul(a, a);
        e >>= 1;
      }
      return r;
    };
    for (uint32_t g = 2; g < q_; ++g) {
      if (spow(g, q_ - 1) != 1) continue;
      bool primitive = true;
      for (auto r : primes)
        if (spow(g, (q_ - 1) / r) == 1) {
          primitive = false;
          break;
        }
      if (!primitive) continue;
      exp_.assign(q_, 0);
      log_.assign(q_, 0);
      uint32_t x = 1;
      for (uint32_t i = 0; i < q_ - 1; ++i) {
        exp_[i] = x;
        log_[x] = i;
        x = slow_mul(x, g);
      }
      return;
    }
    throw DomainError("modulus is not irreducible");
  }

  static std::vector<uint32_t> default_modulus(uint32_t p, uint32_t m) {
    // Conway polynomials for the small fields; coefficients low to high.
    static const std::map<std::pair<uint32_t, uint32_t>, std::vector<uint32_t>> conway = {
        {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
        {{2, 5}, {1, 0, 1, 0, 0, 1}}, {{3, 2}, {2, 2, 1}},     {{3, 3}, {1, 2, 0, 1}},
        {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},    {{7, 2}, {3, 6, 1}},
        {{11, 2}, {2, 7, 1}},      {{13, 2}, {2, 12, 1}}};
    auto it = conway.find({p, m});
    if (it != conway.end()) return it->second;
    // Otherwise the first monic irreducible in base-p counting order.
    uint64_t count = 1;
    for (uint32_t i = 0; i < m; ++i) count *= p;
    for (uint64_t code = 1; code < count; ++code) {
      std::vector<uint32_t> f(m + 1);
      uint64_t c = code;
      for (uint32_t i = 0; i < m; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[m] = 1;
      if (f[0] == 0) continue;
      if (irreducible(p, f)) return f;
    }
    throw DomainError("no irreducible polynomial found");
  }

  // Trial division by every monic polynomial of degree <= m/2.
  static bool irreducible(uint32_t p, const std::vector<uint32_t>& f) {
    size_t m = f.size() - 1;
    for (size_t k = 1; k <= m / 2; ++k) {
      uint64_t count = 1;
      for (size_t i = 0; i < k; ++i) count *= p;
      for (uint64_t code = 0; code < count; ++code) {
        std::vector<uint32_t> g(k + 1);
        uint64_t c = code;
        for (size_t i = 0; i < k; ++i) {
          g[i] = c % p;
          c /= p;
        }
        g[k] = 1;
        std::vector<uint32_t> r = f;
        for (size_t j = m + 1; j-- > k;) {
          uint32_t lead = r[j];
          if (!lead) continue;
          for (size_t i = 0; i <= k; ++i)
            r[j - k + i] = (r[j - k + i] + (p - lead) * g[i]) % p;
        }
        bool zero = true;
        for (size_t i = 0; i < k; ++i) zero = zero && r[i] == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  uint32_t p_, m_, q_ = 0;
  std::vector<uint32_t> modulus_;
  std::vector<uint32_t> exp_, log_;
};

class Fq {
 public:
  Fq() = default;
  Fq(uint32_t v, const GaloisField* f) : v_(v), f_(f) {}

  uint32_t value() const { return v_; }
  const GaloisField* field() const { return f_; }
  bool is_zero() const { return v_ == 0; }

  friend Fq operator+(const Fq& a, const Fq& b) {
    auto f = pick(a, b);
    return f ? Fq(f->add(a.v_, b.v_), f) : Fq();
  }
  friend Fq operator-(const Fq& a, const Fq& b) {
    auto f = pick(a, b);
    return f ? Fq(f->sub(a.v_, b.v_), f) : Fq();
  }
  friend Fq operator*(const Fq& a, const Fq& b) {
    auto f = pick(a, b);
    return f ? Fq(f->mul(a.v_, b.v_), f) : Fq();
  }
  friend Fq operator/(const Fq& a, const Fq& b) {
    if (!b.f_ || b.v_ == 0) throw DomainError("division by zero in F_q");
    return Fq(b.f_->mul(a.v_, b.f_->inv(b.v_)), b.f_);
  }
  Fq operator-() const { return f_ ? Fq(f_->neg(v_), f_) : Fq(); }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  friend bool operator==(const Fq& a, const Fq& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Fq& a, const Fq& b) { return a.v_ != b.v_; }
  friend bool operator<(const Fq& a, const Fq& b) { return a.v_ < b.v_; }

 private:
  static const GaloisField* pick(const Fq& a, const Fq& b) { return a.f_ ? a.f_ : b.f_; }
  uint32_t v_ = 0;
  const GaloisField* f_ = nullptr;
};

// Exact rationals for characteristic zero.
class QQ {
 public:
  using rep = boost::multiprecision::cpp_rational;
  QQ() = default;
  QQ(long long n) : v_(n) {}
  explicit QQ(rep v) : v_(std::move(v)) {}
  const rep& value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  friend QQ operator+(const QQ& a, const QQ& b) { return QQ(rep(a.v_ + b.v_)); }
  friend QQ operator-(const QQ& a, const QQ& b) { return QQ(rep(a.v_ - b.v_)); }
  friend QQ operator*(const QQ& a, const QQ& b) { return QQ(rep(a.v_ * b.v_)); }
  friend QQ operator/(const QQ& a, const QQ& b) {
    if (b.v_ == 0) throw DomainError("division by zero in Q");
    return QQ(rep(a.v_ / b.v_));
  }
  QQ operator-() const { return QQ(rep(-v_)); }
  QQ& operator+=(const QQ& o) { return *this = *this + o; }
  QQ& operator-=(const QQ& o) { return *this = *this - o; }
  QQ& operator*=(const QQ& o) { return *this = *this * o; }
  friend bool operator==(const QQ& a, const QQ& b) { return a.v_ == b.v_; }
  friend bool operator!=(const QQ& a, const QQ& b) { return a.v_ != b.v_; }
  friend bool operator<(const QQ& a, const QQ& b) { return a.v_ < b.v_; }

 private:
  rep v_;
};

inline bool is_zero(const Fq& a) { return a.is_zero(); }
inline bool is_zero(const QQ& a) { return a.is_zero(); }

// Scalar services that depend on the coefficient field.
template <class K>
class FieldOps;

template <>
class FieldOps<Fq> {
 public:
  explicit FieldOps(const GaloisField& f) : f_(&f) {}
  FieldOps(uint32_t p, uint32_t m, std::vector<uint32_t> modulus = {})
      : f_(&GaloisField::get(p, m, std::move(modulus))) {}

  uint32_t characteristic() const { return f_->p(); }
  uint32_t degree() const { return f_->m(); }
  uint32_t order() const { return f_->q(); }
  const GaloisField& field() const { return *f_; }

  Fq zero() const { return Fq(0, f_); }
  Fq one() const { return Fq(1, f_); }
  Fq from_int(long long n) const {
    long long p = f_->p();
    return Fq(static_cast<uint32_t>(((n % p) + p) % p), f_);
  }
  Fq element(uint32_t code) const {
    if (code >= f_->q()) throw DomainError("element code out of range");
    return Fq(code, f_);
  }
  Fq frobenius_root(const Fq& a, int e) const { return Fq(f_->frobenius_root(a.value(), e), f_); }
  Fq frobenius(const Fq& a, int e) const { return Fq(f_->frobenius(a.value(), e), f_); }
  Fq pow(const Fq& a, uint64_t e) const { return Fq(f_->pow(a.value(), e), f_); }

  // C(n, k) mod p by Lucas.
  Fq binomial(uint64_t n, uint64_t k) const {
    if (k > n) return zero();
    uint64_t p = f_->p();
    uint64_t r = 1;
    while (n || k) {
      uint64_t a = n % p, b = k % p;
      if (b > a) return zero();
      r = (r * small_binomial(a, b)) % p;
      n /= p;
      k /= p;
    }
    return from_int(static_cast<long long>(r));
  }

  template <class Rng>
  Fq random(Rng& rng) const {
    return Fq(static_cast<uint32_t>(rng() % f_->q()), f_);
  }

  std::string format(const Fq& a) const {
    if (f_->m() == 1 || a.value() < f_->p()) return std::to_string(a.value());
    return "#" + std::to_string(a.value());
  }
  Fq parse(const std::string& s) const {
    if (s.empty()) throw ParseError("empty scalar");
    if (s[0] == '#') return element(static_cast<uint32_t>(parse_uint(s.substr(1))));
    if (s.find('/') != std::string::npos) {
      auto k = s.find('/');
      return parse(s.substr(0, k)) / parse(s.substr(k + 1));
    }
    bool neg = s[0] == '-';
    uint64_t v = parse_uint(neg ? s.substr(1) : s) % f_->p();
    Fq r = from_int(static_cast<long long>(v));
    return neg ? -r : r;
  }

 private:
  static uint64_t parse_uint(const std::string& s) {
    if (s.empty()) throw ParseError("expected digits");
    uint64_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw ParseError("bad scalar '" + s + "'");
      v = v * 10 + uint64_t(c - '0');
      if (v > (uint64_t(1) << 60)) throw ParseError("scalar too large");
    }
    return v;
  }
  uint64_t small_binomial(uint64_t a, uint64_t b) const {
    uint64_t p = f_->p();
    uint64_t num = 1, den = 1;
    for (uint64_t i = 0; i < b; ++i) {
      num = num * ((a - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    return num * f_->pow(static_cast<uint32_t>(den), p - 2) % p;
  }

  const GaloisField* f_;
};

template <>
class FieldOps<QQ> {
 public:
  FieldOps() = default;
  uint32_t characteristic() const { return 0; }
  uint32_t degree() const { return 1; }
  uint32_t order() const { return 0; }
  QQ zero() const { return QQ(0); }
  QQ one() const { return QQ(1); }
  QQ from_int(long long n) const { return QQ(n); }
  QQ frobenius_root(const QQ& a, int e) const {
    if (e != 0) throw DomainError("no Frobenius in characteristic zero");
    return a;
  }
  QQ frobenius(const QQ& a, int e) const { return frobenius_root(a, e); }
  QQ pow(QQ a, uint64_t e) const {
    QQ r(1);
    while (e) {
      if (e & 1) r = r * a;
      a = a * a;
      e >>= 1;
    }
    return r;
  }
  QQ binomial(uint64_t n, uint64_t k) const {
    if (k > n) return zero();
    boost::multiprecision::cpp_int r = 1;
    for (uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return QQ(QQ::rep(r));
  }
  // Small integers, so that random data stays readable.
  template <class Rng>
  QQ random(Rng& rng) const {
    return QQ(static_cast<long long>(rng() % 7) - 3);
  }
  std::string format(const QQ& a) const {
    std::string s = boost::multiprecision::numerator(a.value()).str();
    auto den = boost::multiprecision::denominator(a.value());
    if (den != 1) s += "/" + den.str();
    return s;
  }
  QQ parse(const std::string& s) const {
    try {
      auto k = s.find('/');
      if (k == std::string::npos) return QQ(QQ::rep(boost::multiprecision::cpp_int(s)));
      boost::multiprecision::cpp_int n(s.substr(0, k)), d(s.substr(k + 1));
      if (d == 0) throw ParseError("zero denominator");
      return QQ(QQ::rep(n, d));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bad rational '" + s + "'");
    }
  }
};

}  // namespace idfilt

#endif
