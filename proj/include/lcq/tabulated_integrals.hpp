// Closed forms for the semi-infinite oscillatory integrals
//
//   int_0^inf k^n e^{i f k} dk                    (Abel regularized, n<=2)
//   PV int_0^inf e^{i f k} / (k - a)   dk
//   FP int_0^inf e^{i f k} / (k - a)^2 dk
//
// and a small term-algebra that assembles amplitudes of the form
// sum_j c_j k^p e^{i f_j k} / (k - a_j)^m into these primitives. Poles on the
// positive axis are taken as principal values (finite part at order two);
// the Heaviside branch structure across light cones arises automatically
// through the sign of f*a.

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "lcq/specfun.hpp"

namespace lcq::tabint {

using specfun::complexd;
using specfun::pi;

// int_0^inf k^n e^{ifk} dk, f != 0 (Abel value)
inline complexd power_integral(int n, double f) {
  if (f == 0.0) throw std::domain_error("power_integral: zero frequency");
  const complexd inv(0.0, 1.0 / f);  // i/f
  switch (n) {
    case 0: return inv;
    case 1: return complexd(-1.0 / (f * f), 0.0);
    case 2: return complexd(0.0, -2.0 / (f * f * f));
    default: throw std::domain_error("power_integral: n > 2 unsupported");
  }
}

// PV int_0^inf e^{ifk}/(k-a) dk, f != 0, a != 0
inline complexd pole_integral(double f, double a) {
  if (f == 0.0) throw std::domain_error("pole_integral: zero frequency");
  if (a == 0.0) throw std::domain_error("pole_integral: pole at origin");
  if (f < 0.0) return std::conj(pole_integral(-f, a));
  const double m = std::abs(a) * f;
  const double Si_m = specfun::sine_integral_Si(m);
  const double Ci_m = specfun::cosine_integral_Ci(m);
  const complexd phase = std::exp(complexd(0.0, a * f));
  if (a > 0.0) {
    return phase * complexd(-Ci_m, Si_m + pi / 2);
  }
  return -phase * complexd(Ci_m, Si_m - pi / 2);
}

// FP int_0^inf e^{ifk}/(k-a)^2 dk = i f E1(f,a) - 1/a
inline complexd double_pole_integral(double f, double a) {
  if (a == 0.0) throw std::domain_error("double_pole_integral: pole at origin");
  return complexd(0.0, f) * pole_integral(f, a) - 1.0 / a;
}

// One canonical term: coeff * k^pow * e^{i freq k} / (k - pole)^order.
// pow > 0 only with order == 0.
struct Term {
  complexd coeff;
  int pow = 0;
  double freq = 0.0;
  double pole = 0.0;
  int order = 0;
};

class TermSum {
 public:
  // c * k^p * e^{ifk} / (k - a)^m with p <= 2, m <= 2; reduces the rational
  // part so that every stored term is canonical.
  void add(complexd c, int p, double f, double a, int m) {
    if (std::abs(c) == 0.0) return;
    if (m == 0) {
      push(c, p, f, 0.0, 0);
      return;
    }
    if (m == 1) {
      switch (p) {
        case 0: push(c, 0, f, a, 1); return;
        case 1:  // k/(k-a) = 1 + a/(k-a)
          push(c, 0, f, 0.0, 0);
          push(c * a, 0, f, a, 1);
          return;
        case 2:  // k^2/(k-a) = k + a + a^2/(k-a)
          push(c, 1, f, 0.0, 0);
          push(c * a, 0, f, 0.0, 0);
          push(c * a * a, 0, f, a, 1);
          return;
        default: break;
      }
    }
    if (m == 2) {
      switch (p) {
        case 0: push(c, 0, f, a, 2); return;
        case 1:  // k/(k-a)^2 = 1/(k-a) + a/(k-a)^2
          push(c, 0, f, a, 1);
          push(c * a, 0, f, a, 2);
          return;
        case 2:  // k^2/(k-a)^2 = 1 + 2a/(k-a) + a^2/(k-a)^2
          push(c, 0, f, 0.0, 0);
          push(c * 2.0 * a, 0, f, a, 1);
          push(c * a * a, 0, f, a, 2);
          return;
        default: break;
      }
    }
    throw std::domain_error("TermSum::add: unsupported power/order");
  }

  // c * k^p * cos(fk) / (k-a)^m
  void add_cos(complexd c, int p, double f, double a, int m) {
    add(0.5 * c, p, f, a, m);
    add(0.5 * c, p, -f, a, m);
  }

  // c * k^p * sin(fk) / (k-a)^m
  void add_sin(complexd c, int p, double f, double a, int m) {
    const complexd half(0.0, -0.5);  // 1/(2i)
    add(half * c, p, f, a, m);
    add(-half * c, p, -f, a, m);
  }

  complexd evaluate() const {
    complexd total = 0.0;
    for (const auto& t : terms_) {
      if (t.order == 0) {
        total += t.coeff * power_integral(t.pow, t.freq);
      } else if (t.order == 1) {
        total += t.coeff * pole_integral(t.freq, t.pole);
      } else {
        total += t.coeff * double_pole_integral(t.freq, t.pole);
      }
    }
    return total;
  }

  const std::vector<Term>& terms() const { return terms_; }
  void clear() { terms_.clear(); }

 private:
  void push(complexd c, int p, double f, double a, int m) {
    if (f == 0.0) {
      throw std::domain_error(
          "TermSum: zero-frequency term (evaluation point on a light cone)");
    }
    terms_.push_back(Term{c, p, f, a, m});
  }

  std::vector<Term> terms_;
};

}  // namespace lcq::tabint
