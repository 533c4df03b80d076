#pragma once

#include "cyclotomic.hpp"
#include "matgroup.hpp"

#include <complex>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace picard {

using Exponents = std::vector<int>;

namespace detail {
inline bool coeff_zero(const Cyc& c) { return c.is_zero(); }
template <class F>
bool coeff_zero(const std::complex<F>& c) {
  return c == std::complex<F>{};
}
inline std::string coeff_str(const Cyc& c) { return c.pretty(); }
template <class F>
std::string coeff_str(const std::complex<F>& c) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << c.real() << "," << c.imag() << ")";
  return os.str();
}
}  // namespace detail

// Terms are kept in graded lex order, X0 > X1 > X2.
template <class C>
class HomPoly {
 public:
  using Terms = std::map<Exponents, C, std::greater<>>;

  HomPoly() = default;
  HomPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) {}

  static HomPoly variable(int nvars, int k) {
    HomPoly p(nvars, 1);
    Exponents e(nvars, 0);
    e[k] = 1;
    p.terms_[e] = C(1);
    return p;
  }
  static HomPoly constant(int nvars, const C& c) {
    HomPoly p(nvars, 0);
    if (!detail::coeff_zero(c)) p.terms_[Exponents(nvars, 0)] = c;
    return p;
  }
  static HomPoly monomial(const Exponents& e, const C& c) {
    int d = 0;
    for (int x : e) d += x;
    HomPoly p(static_cast<int>(e.size()), d);
    if (!detail::coeff_zero(c)) p.terms_[e] = c;
    return p;
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? C(0) : it->second;
  }

  void add_term(const Exponents& e, const C& c) {
    check_exponents(e);
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) it->second += c;
    if (detail::coeff_zero(it->second)) terms_.erase(it);
  }

  HomPoly& operator+=(const HomPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      nvars_ = o.nvars_;
      degree_ = o.degree_;
    }
    same_shape(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  HomPoly& operator-=(const HomPoly& o) { return *this += o.scaled(C(-1)); }
  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }

  HomPoly scaled(const C& s) const {
    HomPoly r(nvars_, degree_);
    if (detail::coeff_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
    return r;
  }

  friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    HomPoly r(a.nvars_, a.degree_ + b.degree_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (int k = 0; k < a.nvars_; ++k) e[k] = ea[k] + eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  HomPoly pow(int n) const {
    HomPoly r = constant(nvars_, C(1));
    for (int k = 0; k < n; ++k) r = r * *this;
    return r;
  }

  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  template <class D, class Map>
  HomPoly<D> map_coeffs(Map&& f) const {
    HomPoly<D> r(nvars_, degree_);
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + detail::coeff_str(c) + ")";
      bool first = true;
      for (int k = 0; k < nvars_; ++k) {
        if (e[k] == 0) continue;
        s += first ? " * " : " ";
        first = false;
        s += names.empty() ? "X" + std::to_string(k) : names[k];
        if (e[k] != 1) s += "^" + std::to_string(e[k]);
      }
    }
    return s;
  }

 private:
  void check_exponents(const Exponents& e) const {
    if (static_cast<int>(e.size()) != nvars_) throw std::invalid_argument("exponent length mismatch");
    int d = 0;
    for (int x : e) d += x;
    if (d != degree_) throw std::invalid_argument("inhomogeneous term");
  }
  void same_shape(const HomPoly& o) const {
    if (o.nvars_ != nvars_ || o.degree_ != degree_) throw std::invalid_argument("shape mismatch");
  }

  int nvars_ = 0;
  int degree_ = 0;
  Terms terms_;
};

using CycPoly = HomPoly<Cyc>;
using CPoly = HomPoly<std::complex<double>>;

// images[k][j] is the coefficient of X_j in the image of X_k; the result is multiplied by scalar.
template <class C>
struct LinearSub {
  std::vector<std::vector<C>> images;
  C scalar = C(1);
};

template <class C>
HomPoly<C> substitute(const HomPoly<C>& p, const LinearSub<C>& s) {
  const int n = p.nvars();
  if (static_cast<int>(s.images.size()) != n) throw std::invalid_argument("substitution size mismatch");
  std::vector<std::vector<HomPoly<C>>> powers(n);
  for (int k = 0; k < n; ++k) {
    if (static_cast<int>(s.images[k].size()) != n) throw std::invalid_argument("substitution size mismatch");
    HomPoly<C> lin(n, 1);
    for (int j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      lin.add_term(e, s.images[k][j]);
    }
    powers[k].push_back(HomPoly<C>::constant(n, C(1)));
    for (int d = 1; d <= p.degree(); ++d) powers[k].push_back(powers[k].back() * lin);
  }
  HomPoly<C> r(n, p.degree());
  for (const auto& [e, c] : p.terms()) {
    HomPoly<C> t = HomPoly<C>::constant(n, c);
    for (int k = 0; k < n; ++k)
      if (e[k]) t = t * powers[k][e[k]];
    r += t;
  }
  return r.scaled(s.scalar);
}

inline double max_abs(const CPoly& p) {
  double m = 0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c));
  return m;
}

struct Residual {
  double absolute = 0;
  double relative = 0;
};

// X_k -> sum_j conj(g)_{(2-k)(2-j)} X_j, without the determinant factor.
inline LinearSub<Cyc> pu21_sub(const Mat3& g) {
  LinearSub<Cyc> s;
  s.images.assign(3, std::vector<Cyc>(3));
  for (int k = 0; k < 3; ++k)
    for (int j = 0; j < 3; ++j) s.images[k][j] = g(2 - k, 2 - j).conj();
  return s;
}

// The scalar attached to a degree-d polynomial is (det g)^(d/3).
inline Cyc pu21_scalar(const Mat3& g, int degree) {
  if (degree % 3 != 0) throw domain_error("degree must be divisible by 3");
  Cyc d = g.det();
  if (auto u = cyc_unit_class(d)) return u->pow(degree / 3).value();
  return d.pow(degree / 3);
}

inline CycPoly act_pu21(const Mat3& g, const CycPoly& p) {
  if (p.nvars() != 3) throw std::invalid_argument("act_pu21 needs three variables");
  auto s = pu21_sub(g);
  s.scalar = pu21_scalar(g, p.degree());
  return substitute(p, s);
}

// k is the weight; p must have degree 3k - 3.
inline CycPoly act_pu21(const Mat3& g, const CycPoly& p, int k) {
  if (p.degree() != 3 * k - 3) throw std::invalid_argument("degree is not 3k-3");
  return act_pu21(g, p);
}

// X_k -> (-1)^k a_{(1-k)1} X0 + (-1)^(k+1) a_{(1-k)0} X1
inline LinearSub<Cyc> psl2_sub(const Mat2i& a) {
  if (a[0][0] * a[1][1] - a[0][1] * a[1][0] != 1) throw domain_error("matrix not unimodular");
  LinearSub<Cyc> s;
  s.images.assign(2, std::vector<Cyc>(2));
  for (int k = 0; k < 2; ++k) {
    long sg = (k % 2 == 0) ? 1 : -1;
    s.images[k][0] = Cyc(sg * a[1 - k][1]);
    s.images[k][1] = Cyc(-sg * a[1 - k][0]);
  }
  return s;
}

inline CycPoly act_psl2(const Mat2i& a, const CycPoly& p) {
  if (p.nvars() != 2) throw std::invalid_argument("act_psl2 needs two variables");
  return substitute(p, psl2_sub(a));
}

// (z1 X0 + z2 X1 + X2)^d in the six variables (eta0, eta1, eta2, X0, X1, X2), homogeneous in eta.
inline CycPoly pairing_power(int d) {
  CycPoly lin(6, 2);
  for (int k = 0; k < 3; ++k) {
    Exponents e(6, 0);
    e[k] = 1;
    e[3 + k] = 1;
    lin.add_term(e, Cyc(1));
  }
  return lin.pow(d);
}

// eta -> g eta together with X -> pu21_sub(g). The pairing power picks up (det g)^(k-1), the Jacobian
// contributes det g and the automorphy factor of f contributes (det g)^(-k).
inline bool pairing_invariant(const Mat3& g, int k) {
  LinearSub<Cyc> s;
  s.images.assign(6, std::vector<Cyc>(6));
  auto x = pu21_sub(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      s.images[i][j] = g(i, j);
      s.images[3 + i][3 + j] = x.images[i][j];
    }
  s.scalar = pu21_scalar(g, 3 * k - 3);
  CycPoly p = pairing_power(3 * k - 3);
  Cyc d = g.det();
  CycPoly lhs = substitute(p, s).scaled(d * d.pow(-k));
  return lhs == p;
}

}  // namespace picard
