#pragma once

#include <gmpxx.h>

#include <array>
#include <cctype>
#include <complex>
#include <limits>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace picard {

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Element of Q(zeta), zeta a primitive 12th root of unity, zeta^4 = zeta^2 - 1.
// Stored as c0 + c1 z + c2 z^2 + c3 z^3.
class Cyc {
 public:
  using coeffs_type = std::array<mpq_class, 4>;

  Cyc() = default;
  Cyc(long n) { c_[0] = n; }  // NOLINT
  Cyc(const mpq_class& q) { c_[0] = q; }  // NOLINT
  explicit Cyc(const coeffs_type& c) : c_(c) { canon(); }
  Cyc(mpq_class a, mpq_class b, mpq_class c, mpq_class d) : c_{a, b, c, d} { canon(); }

  static Cyc zeta() { return {0, 1, 0, 0}; }
  static Cyc rho() { return {-1, 0, 1, 0}; }
  static Cyc i() { return {0, 0, 0, 1}; }
  static Cyc sqrt3() { return {0, 2, 0, -1}; }
  static Cyc zeta_pow(int k) {
    k = ((k % 12) + 12) % 12;
    Cyc r(1);
    for (int j = 0; j < k; ++j) r *= zeta();
    return r;
  }

  const coeffs_type& coeffs() const { return c_; }
  const mpq_class& operator[](int k) const { return c_[k]; }

  bool is_zero() const { return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }
  bool is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }

  friend bool operator==(const Cyc& a, const Cyc& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  Cyc operator-() const { return {-c_[0], -c_[1], -c_[2], -c_[3]}; }
  Cyc& operator+=(const Cyc& b) {
    for (int k = 0; k < 4; ++k) c_[k] += b.c_[k];
    return *this;
  }
  Cyc& operator-=(const Cyc& b) {
    for (int k = 0; k < 4; ++k) c_[k] -= b.c_[k];
    return *this;
  }
  Cyc& operator*=(const Cyc& b) { return *this = *this * b; }
  Cyc& operator/=(const Cyc& b) { return *this = *this * b.inverse(); }

  friend Cyc operator+(Cyc a, const Cyc& b) { return a += b; }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a -= b; }
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.is_rational()) return b.scaled(a.c_[0]);
    if (b.is_rational()) return a.scaled(b.c_[0]);
    std::array<mpq_class, 7> d;
    for (int j = 0; j < 4; ++j) {
      if (sgn(a.c_[j]) == 0) continue;
      for (int k = 0; k < 4; ++k) d[j + k] += a.c_[j] * b.c_[k];
    }
    // z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
    Cyc r;
    r.c_[0] = d[0] - d[4] - d[6];
    r.c_[1] = d[1] - d[5];
    r.c_[2] = d[2] + d[4];
    r.c_[3] = d[3] + d[5];
    return r;
  }

  Cyc scaled(const mpq_class& q) const { return {c_[0] * q, c_[1] * q, c_[2] * q, c_[3] * q}; }

  // z -> z^11
  Cyc conj() const { return {c_[0] + c_[2], c_[1], -c_[2], -c_[1] - c_[3]}; }

  Cyc inverse() const {
    if (is_zero()) throw domain_error("division by zero in Q(zeta12)");
    if (is_rational()) return Cyc(1 / c_[0]);
    // columns are this * z^j; solve M x = e0
    std::array<std::array<mpq_class, 5>, 4> m;
    Cyc col = *this;
    for (int j = 0; j < 4; ++j) {
      for (int r = 0; r < 4; ++r) m[r][j] = col.c_[r];
      col = col * zeta();
    }
    for (int r = 0; r < 4; ++r) m[r][4] = (r == 0) ? 1 : 0;
    for (int p = 0; p < 4; ++p) {
      int piv = p;
      while (sgn(m[piv][p]) == 0) ++piv;
      std::swap(m[p], m[piv]);
      for (int r = 0; r < 4; ++r) {
        if (r == p || sgn(m[r][p]) == 0) continue;
        mpq_class f = m[r][p] / m[p][p];
        for (int c = p; c < 5; ++c) m[r][c] -= f * m[p][c];
      }
    }
    return {m[0][4] / m[0][0], m[1][4] / m[1][1], m[2][4] / m[2][2], m[3][4] / m[3][3]};
  }

  Cyc pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    Cyc r(1), b = *this;
    while (n) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  }

  // exact real and imaginary parts as A + B*sqrt3
  std::pair<mpq_class, mpq_class> re_parts() const { return {c_[0] + c_[2] / 2, c_[1] / 2}; }
  std::pair<mpq_class, mpq_class> im_parts() const { return {c_[1] / 2 + c_[3], c_[2] / 2}; }

  template <class F = double>
  std::complex<F> embed() const {
    return embed_bits<F>(std::numeric_limits<F>::digits + 16);
  }

  // value at zeta = exp(i pi/6), evaluated at the given working precision then rounded to F
  template <class F = double>
  std::complex<F> embed_bits(unsigned bits) const {
    mpf_class s3(3, bits);
    s3 = sqrt(s3);
    auto [ra, rb] = re_parts();
    auto [ia, ib] = im_parts();
    mpf_class re(ra, bits), im(ia, bits);
    re += mpf_class(rb, bits) * s3;
    im += mpf_class(ib, bits) * s3;
    return {static_cast<F>(re.get_d()), static_cast<F>(im.get_d())};
  }

  std::string str() const {
    std::ostringstream os;
    os << c_[0].get_str() << " + " << c_[1].get_str() << "*z + " << c_[2].get_str() << "*z^2 + "
       << c_[3].get_str() << "*z^3";
    return os.str();
  }

  // compact form for reports, e.g. "1/2 - z^3"
  std::string pretty() const {
    if (is_zero()) return "0";
    static const char* names[4] = {"", "z", "z^2", "z^3"};
    std::string out;
    for (int k = 0; k < 4; ++k) {
      if (sgn(c_[k]) == 0) continue;
      mpq_class a = abs(c_[k]);
      bool neg = sgn(c_[k]) < 0;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      if (k == 0)
        out += a.get_str();
      else if (a == 1)
        out += names[k];
      else
        out += a.get_str() + "*" + names[k];
    }
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0;
    for (const auto& q : c_) h = h * 1000003u ^ std::hash<std::string>{}(q.get_str());
    return h;
  }

  friend std::ostream& operator<<(std::ostream& os, const Cyc& a) { return os << a.pretty(); }

 private:
  void canon() {
    for (auto& q : c_) q.canonicalize();
  }
  coeffs_type c_{};
};

inline const Cyc& rho() {
  static const Cyc r = Cyc::rho();
  return r;
}
inline const Cyc& rho2() {
  static const Cyc r = Cyc::rho() * Cyc::rho();
  return r;
}
inline const Cyc& imag_unit() {
  static const Cyc r = Cyc::i();
  return r;
}
inline const Cyc& sqrt3() {
  static const Cyc r = Cyc::sqrt3();
  return r;
}

// a = (-1)^sign * rho^j
struct UnitClass {
  int sign = 0;
  int j = 0;
  friend bool operator==(const UnitClass&, const UnitClass&) = default;
  Cyc value() const {
    Cyc v = Cyc::rho().pow(j);
    return sign ? -v : v;
  }
  UnitClass operator*(const UnitClass& o) const { return {(sign + o.sign) % 2, (j + o.j) % 3}; }
  UnitClass pow(long n) const {
    long m = ((n % 6) + 6) % 6;
    return {static_cast<int>((sign * m) % 2), static_cast<int>((j * m) % 3)};
  }
  UnitClass inverse() const { return {sign, (3 - j) % 3}; }
  std::string str() const {
    static const char* r[3] = {"1", "rho", "rho^2"};
    return std::string(sign ? "-" : "") + r[j];
  }
};

inline std::optional<UnitClass> cyc_unit_class(const Cyc& a) {
  for (int s = 0; s < 2; ++s)
    for (int j = 0; j < 3; ++j)
      if (UnitClass{s, j}.value() == a) return UnitClass{s, j};
  return std::nullopt;
}

// a = zeta^k for some k in [0,12)
inline std::optional<int> root_of_unity_index(const Cyc& a) {
  Cyc p(1);
  for (int k = 0; k < 12; ++k) {
    if (p == a) return k;
    p *= Cyc::zeta();
  }
  return std::nullopt;
}

namespace detail {

class CycParser {
 public:
  explicit CycParser(std::string_view s) : s_(s) {}

  Cyc parse() {
    Cyc v = expr();
    skip();
    if (p_ != s_.size()) fail("trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("cyclotomic parse error at " + std::to_string(p_) + ": " + what + " in '" +
                                std::string(s_) + "'");
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  Cyc expr() {
    Cyc v;
    bool first = true;
    for (;;) {
      skip();
      int sign = 1;
      if (eat('+'))
        sign = 1;
      else if (eat('-'))
        sign = -1;
      else if (!first)
        break;
      Cyc t = term();
      v += sign > 0 ? t : -t;
      first = false;
    }
    return v;
  }
  Cyc term() {
    Cyc v = power();
    for (;;) {
      if (eat('*'))
        v *= power();
      else if (eat('/'))
        v /= power();
      else
        break;
    }
    return v;
  }
  Cyc power() {
    Cyc b = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      long n = integer();
      b = b.pow(neg ? -n : n);
    }
    return b;
  }
  long integer() {
    skip();
    std::size_t st = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (st == p_) fail("expected integer");
    return std::stol(std::string(s_.substr(st, p_ - st)));
  }
  Cyc atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    if (eat('(')) {
      Cyc v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat('-')) return -atom();
    char c = s_[p_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      return Cyc(mpq_class(mpz_class(std::string(s_.substr(st, p_ - st)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t st = p_;
      while (p_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p_]))) ++p_;
      std::string id(s_.substr(st, p_ - st));
      if (id == "z" || id == "zeta") return Cyc::zeta();
      if (id == "rho") return Cyc::rho();
      if (id == "i") return Cyc::i();
      if (id == "sqrt3") return Cyc::sqrt3();
      p_ = st;
      fail("unknown symbol " + id);
    }
    fail(std::string("unexpected character ") + c);
  }

  std::string_view s_;
  std::size_t p_ = 0;
};

}  // namespace detail

inline Cyc parse_cyc(std::string_view s) { return detail::CycParser(s).parse(); }

}  // namespace picard

template <>
struct std::hash<picard::Cyc> {
  std::size_t operator()(const picard::Cyc& a) const { return a.hash(); }
};
