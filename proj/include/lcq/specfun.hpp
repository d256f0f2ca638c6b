// Special functions (Si, Ci, si, Ei on the imaginary axis) and adaptive /
// oscillatory quadrature. These are the numerical bedrock for every
// closed-form amplitude in the library and for the independent quadrature
// oracles used in the test suites.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace lcq::specfun {

using complexd = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

// ---------------------------------------------------------------------------
// Sine and cosine integrals.
//
// Si(x) = int_0^x sin(t)/t dt              (odd in x)
// si(x) = Si(x) - pi/2                     (tail form, si(x) -> 0 as x -> inf)
// Ci(x) = gamma + ln(x) + int_0^x (cos(t)-1)/t dt,  x > 0
//
// Power series below |x| = 8; above, both are obtained at once from the
// continued fraction of E1(ix), E1(ix) = -Ci(x) + i*si(x).
// ---------------------------------------------------------------------------

namespace detail {

// E1(z) by the modified Lentz continued fraction; valid for |arg z| < pi.
inline complexd e1_continued_fraction(complexd z) {
  const double tiny = 1e-290;
  complexd b = z + 1.0;
  complexd c = 1.0 / tiny;
  complexd d = 1.0 / b;
  complexd h = d;
  for (int i = 1; i <= 400; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    if (c == complexd(0.0, 0.0)) c = tiny;
    const complexd delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

}  // namespace detail

inline double sine_integral_Si(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("Si: non-finite argument");
  const double ax = std::abs(x);
  double value;
  if (ax < 1e-300) {
    value = ax;
  } else if (ax < 8.0) {
    // The fused series above carries a vestigial factor; recompute cleanly.
    const double x2 = ax * ax;
    double term = ax;  // x^(2k+1)/(2k+1)!
    double sum = ax;
    for (int k = 1; k < 100; ++k) {
      term *= -x2 / (static_cast<double>(2 * k) * (2 * k + 1));
      sum += term / (2 * k + 1);
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    value = sum;
  } else {
    const complexd e1 = detail::e1_continued_fraction(complexd(0.0, ax));
    value = pi / 2 + e1.imag();
  }
  return x < 0 ? -value : value;
}

inline double sine_integral_si(double x) {
  return sine_integral_Si(x) - pi / 2;
}

inline double cosine_integral_Ci(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("Ci: argument must be > 0");
  if (x < 8.0) {
    const double x2 = x * x;
    double term = 1.0;  // (-1)^k x^(2k)/(2k)!
    double tail = 0.0;  // int_0^x (cos t - 1)/t dt
    for (int k = 1; k < 100; ++k) {
      term *= -x2 / (static_cast<double>(2 * k - 1) * (2 * k));
      tail += term / (2 * k);
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(tail))) break;
    }
    return euler_gamma + std::log(x) + tail;
  }
  const complexd e1 = detail::e1_continued_fraction(complexd(0.0, x));
  return -e1.real();
}

// Ei evaluated on the imaginary axis with the principal-value convention
//   Ei(iy) = Ci(|y|) + i (Si(y) - sgn(y) pi/2) = Ci(|y|) + i sgn(y) si(|y|),
// the unique choice under which the tabulated semi-infinite integrals
//   int_0^inf e^{+-i w g}/(w + b) dw = -e^{-+i g b} Ei(+-i g b)
// hold as principal values for g, b > 0. Conjugation symmetry
// Ei(-iy) = conj(Ei(iy)) is built in.
inline complexd exp_integral_imag(double y) {
  if (y == 0.0 || !std::isfinite(y)) {
    throw std::invalid_argument("Ei(iy): y must be finite and nonzero");
  }
  const double ay = std::abs(y);
  const double re = cosine_integral_Ci(ay);
  const double im = sine_integral_si(ay);
  return {re, y > 0 ? im : -im};
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  double upper_cutoff = 200.0;  // start of the oscillatory tail treatment

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0)) {
      throw std::invalid_argument("QuadratureSpec: tolerances must be > 0");
    }
    if (max_subdivisions < 1) {
      throw std::invalid_argument("QuadratureSpec: max_subdivisions >= 1");
    }
    if (!(upper_cutoff > 0)) {
      throw std::invalid_argument("QuadratureSpec: upper_cutoff must be > 0");
    }
  }
};

struct QuadratureResult {
  complexd value{0.0, 0.0};
  double error = std::numeric_limits<double>::infinity();
  bool converged = false;
  long evaluations = 0;

  complexd value_or_throw() const {
    if (!converged) {
      throw std::runtime_error("quadrature did not converge; partial estimate " +
                               std::to_string(value.real()) + " + " +
                               std::to_string(value.imag()) + "i, err " +
                               std::to_string(error));
    }
    return value;
  }
};

namespace detail {

// 15-point Kronrod / 7-point Gauss pair (QUADPACK dqk15 constants).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, complexd& integral, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  complexd result_k = 0.0, result_g = 0.0;
  const complexd fc = f(c);
  result_k += kGK15WeightsK[7] * fc;
  result_g += kGK15WeightsG[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kGK15Nodes[j];
    const complexd f1 = f(c - dx);
    const complexd f2 = f(c + dx);
    result_k += kGK15WeightsK[j] * (f1 + f2);
    if (j % 2 == 1) result_g += kGK15WeightsG[j / 2] * (f1 + f2);
  }
  integral = result_k * h;
  err = std::abs((result_k - result_g) * h);
}

struct Segment {
  double a, b;
  complexd value;
  double error;
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration of a complex-valued integrand
// on a finite interval.
template <class F>
QuadratureResult integrate_adaptive(const F& f, double a, double b,
                                    const QuadratureSpec& spec) {
  spec.validate();
  QuadratureResult out;
  std::vector<detail::Segment> segs;
  detail::Segment s0{a, b, 0.0, 0.0};
  detail::gk15(f, a, b, s0.value, s0.error);
  out.evaluations = 15;
  segs.push_back(s0);
  for (int iter = 0; iter < spec.max_subdivisions; ++iter) {
    complexd total = 0.0;
    double err_total = 0.0;
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      err_total += segs[i].error;
      if (segs[i].error > worst_err) {
        worst_err = segs[i].error;
        worst = i;
      }
    }
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (err_total <= tol) {
      out.value = total;
      out.error = err_total;
      out.converged = true;
      return out;
    }
    // split worst segment
    detail::Segment w = segs[worst];
    const double mid = 0.5 * (w.a + w.b);
    if (mid <= w.a || mid >= w.b) {  // cannot subdivide further
      out.value = total;
      out.error = err_total;
      out.converged = err_total <= 10 * tol;
      return out;
    }
    detail::Segment left{w.a, mid, 0.0, 0.0}, right{mid, w.b, 0.0, 0.0};
    detail::gk15(f, left.a, left.b, left.value, left.error);
    detail::gk15(f, right.a, right.b, right.value, right.error);
    out.evaluations += 30;
    segs[worst] = left;
    segs.push_back(right);
  }
  complexd total = 0.0;
  double err_total = 0.0;
  for (const auto& s : segs) {
    total += s.value;
    err_total += s.error;
  }
  out.value = total;
  out.error = err_total;
  out.converged = false;
  return out;
}

namespace detail {

// Wynn epsilon algorithm on a sequence of partial sums. Returns the best
// extrapolated value and an error heuristic.
inline void wynn_epsilon(const std::vector<complexd>& partial, complexd& value,
                         double& err) {
  const std::size_t n = partial.size();
  if (n == 0) {
    value = 0.0;
    err = std::numeric_limits<double>::infinity();
    return;
  }
  std::vector<complexd> cur = partial;
  std::vector<complexd> prev(n + 1, 0.0);
  complexd best = partial.back();
  double best_step = std::abs(n >= 2 ? partial[n - 1] - partial[n - 2]
                                     : partial.back());
  bool degenerate = false;
  for (std::size_t k = 1; k < n && !degenerate; ++k) {
    std::vector<complexd> next(n - k);
    for (std::size_t i = 0; i + k < n; ++i) {
      const complexd diff = cur[i + 1] - cur[i];
      if (std::abs(diff) < 1e-300) {
        // sequence converged exactly at this depth
        best = cur[i + 1];
        best_step = 0.0;
        degenerate = true;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (degenerate) break;
    prev = cur;
    cur = next;
    if (k % 2 == 0 && cur.size() >= 2) {  // even columns approximate the sum
      const complexd cand = cur.back();
      const double step = std::abs(cand - cur[cur.size() - 2]);
      if (step < best_step) {
        best_step = step;
        best = cand;
      }
    }
  }
  value = best;
  err = best_step;
}

}  // namespace detail

// Semi-infinite oscillatory integral int_0^inf f(t) dt. The integrand is
// integrated adaptively up to spec.upper_cutoff; the remaining tail is summed
// over segments of length `tail_segment` and accelerated with the epsilon
// algorithm, which also assigns the Abel value to marginally convergent
// oscillatory tails.
template <class F>
QuadratureResult oscillatory_quadrature(const F& f, const QuadratureSpec& spec,
                                        double tail_segment = pi) {
  spec.validate();
  if (!(tail_segment > 0)) {
    throw std::invalid_argument("oscillatory_quadrature: tail segment must be > 0");
  }
  QuadratureSpec head_spec = spec;
  head_spec.max_subdivisions = std::max(1, spec.max_subdivisions / 2);
  QuadratureResult head = integrate_adaptive(f, 0.0, spec.upper_cutoff, head_spec);

  QuadratureSpec seg_spec = spec;
  seg_spec.abs_tol = std::max(1e-15, 0.05 * spec.abs_tol);
  seg_spec.max_subdivisions = 60;

  std::vector<complexd> partial;
  complexd running = 0.0;
  const int max_segments = 640;
  double a = spec.upper_cutoff;
  long evals = head.evaluations;
  complexd tail_value = 0.0;
  double tail_err = std::numeric_limits<double>::infinity();
  for (int s = 0; s < max_segments; ++s) {
    const double b = a + tail_segment;
    QuadratureResult seg = integrate_adaptive(f, a, b, seg_spec);
    evals += seg.evaluations;
    running += seg.value;
    partial.push_back(running);
    a = b;
    if (partial.size() >= 8 && partial.size() % 4 == 0) {
      detail::wynn_epsilon(partial, tail_value, tail_err);
      const double tol =
          std::max(spec.abs_tol, spec.rel_tol * std::abs(head.value + tail_value));
      if (tail_err < 0.5 * tol) break;
    }
  }
  if (partial.size() >= 2 && !std::isfinite(tail_err)) {
    detail::wynn_epsilon(partial, tail_value, tail_err);
  }

  QuadratureResult out;
  out.value = head.value + tail_value;
  out.error = head.error + tail_err;
  out.evaluations = evals;
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
  out.converged = head.converged && tail_err <= tol;
  return out;
}

}  // namespace lcq::specfun
