// 1-D transmission-line engine: closed-form second-order amplitudes for two
// qubits coupled to an open line, the reduced two-qubit state and its
// concurrence across the light cone, and the Fermi-problem probabilities
// with the third-order interference term and the conditioned detection
// probability. Everything is expressed in the dimensionless variables
// rho = Omega r / v, xi = v t / r, with Omega = v = hbar = 1 internally.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lcq/amplitudes.hpp"
#include "lcq/qinfo.hpp"
#include "lcq/specfun.hpp"
#include "lcq/tabulated_integrals.hpp"

namespace lcq::circuit_qed {

using specfun::complexd;
using specfun::pi;

struct LineGeometry {
  double rho;       // Omega r / v
  double xi;        // v t / r
  double K;         // dimensionless coupling, K = 4 d^2 N / (hbar^2 v)

  double tau() const { return rho * xi; }        // Omega t
  double tau_minus() const { return rho * (1.0 - xi); }
  double tau_plus() const { return rho * (1.0 + xi); }

  void validate() const {
    if (!(rho > 0.0)) throw std::invalid_argument("LineGeometry: rho must be > 0");
    if (!(xi >= 0.0)) throw std::invalid_argument("LineGeometry: xi must be >= 0");
    if (!(K > 0.0)) throw std::invalid_argument("LineGeometry: K must be > 0");
  }
};

// Baseline coupling: charge qubit strongly coupled to a line
// (g/pi ~ 175 MHz at Omega/2pi ~ 10 GHz).
inline constexpr double k0_baseline = 1.5e-4;

// Renormalized single-qubit emission envelopes; f+ governs RWA-allowed
// emission, f- the counter-rotating self-excitation.
inline double emission_envelope(double tau, int sign) {
  const double core =
      2.0 * (std::cos(tau) + tau * specfun::sine_integral_Si(tau) - 1.0);
  return pi * tau + (sign > 0 ? core : -core);
}

inline double f_plus(double tau, double K) { return 0.5 * K * emission_envelope(tau, +1); }
inline double f_minus(double tau, double K) { return 0.5 * K * emission_envelope(tau, -1); }

namespace detail {

// S(z,t) = (e^{izt}-1)/z and its z-derivative; S(0,t) = it.
inline complexd S(double z, double t) {
  if (std::abs(z * t) < 1e-8) {
    // series: it - z t^2/2 - i z^2 t^3/6
    return complexd(0.0, t) + z * complexd(-t * t / 2.0, 0.0) +
           z * z * complexd(0.0, -t * t * t / 6.0);
  }
  return (std::exp(complexd(0.0, z * t)) - 1.0) / z;
}

inline complexd S_prime(double z, double t) {
  if (std::abs(z * t) < 1e-6) {
    // -t^2/2 - i z t^3/3 + z^2 t^4/8
    return complexd(-t * t / 2.0, -z * t * t * t / 3.0) +
           complexd(z * z * t * t * t * t / 8.0, 0.0);
  }
  const complexd e = std::exp(complexd(0.0, z * t));
  return (complexd(0.0, t) * e * z - e + 1.0) / (z * z);
}

// Exchange amplitude without the coupling prefactor:
//   J = int_0^inf dw w cos(w rho) [ g(1-w) + g(-1-w) ],
//   g(c) = (1 + i c t - e^{i c t}) / c^2.
inline complexd exchange_integral(double rho, double t) {
  tabint::TermSum ts;
  const complexd i1(0.0, 1.0);
  const complexd eit = std::exp(complexd(0.0, t));
  // g(1-w): numerator 1 + i t - i t w - e^{it} e^{-iwt}, pole (w-1)^2
  ts.add_cos(1.0 + i1 * t, 1, rho, 1.0, 2);
  ts.add_cos(-i1 * t, 2, rho, 1.0, 2);
  ts.add(-0.5 * eit, 1, rho - t, 1.0, 2);
  ts.add(-0.5 * eit, 1, -rho - t, 1.0, 2);
  // g(-1-w): numerator 1 - i t - i t w - e^{-it} e^{-iwt}, pole (w+1)^2
  ts.add_cos(1.0 - i1 * t, 1, rho, -1.0, 2);
  ts.add_cos(-i1 * t, 2, rho, -1.0, 2);
  ts.add(-0.5 / eit, 1, rho - t, -1.0, 2);
  ts.add(-0.5 / eit, 1, -rho - t, -1.0, 2);
  return ts.evaluate();
}

// Single-photon cross contraction without the coupling prefactor:
//   L = int_0^inf dw w cos(w rho) S(1-w,t) S(1+w,t).
inline complexd cross_coherence_integral(double rho, double t) {
  tabint::TermSum ts;
  const complexd eit = std::exp(complexd(0.0, t));
  const complexd e2 = eit * eit;
  for (int s : {+1, -1}) {
    const double a = static_cast<double>(s);
    const complexd c0 = -0.5 * a * (e2 + 1.0);
    ts.add_cos(c0, 1, rho, a, 1);
    ts.add_cos(0.5 * a * eit, 1, rho - t, a, 1);
    ts.add_cos(0.5 * a * eit, 1, rho + t, a, 1);
  }
  return ts.evaluate();
}

}  // namespace detail

// Closed-form amplitude set for the |eg0> initial state. The exchange X
// carries the light-cone branch structure through the sign of rho(1-xi);
// xi = 1 itself is rejected as the cone singularity.
inline AmplitudeSet amplitudes_1d(const LineGeometry& g) {
  g.validate();
  if (std::abs(g.xi - 1.0) < 1e-12) {
    throw std::domain_error("amplitudes_1d: xi = 1 lies on the light cone");
  }
  const double t = g.tau();
  AmplitudeSet amps;
  amps.variant = AmplitudeVariant::FromEG;
  amps.U2 = f_plus(t, g.K);
  amps.V2 = f_minus(t, g.K);
  // Re A fixed by unitarity of the O(d^2) state; the imaginary (level-shift)
  // part is cutoff-dependent and drops from every observable at this order.
  amps.A = complexd(-0.5 * (amps.U2 + amps.V2), 0.0);
  amps.X = 0.5 * g.K * detail::exchange_integral(g.rho, t);
  amps.l = 0.5 * g.K * detail::cross_coherence_integral(g.rho, t);
  amps.require_finite();
  return amps;
}

// Reduced two-qubit state of Eq-(42j) form in |ee>,|eg>,|ge>,|gg> ordering.
inline qinfo::XStateCoefficients reduced_state_1d(const LineGeometry& g) {
  const AmplitudeSet a = amplitudes_1d(g);
  qinfo::XStateCoefficients x;
  x.rho11 = a.V2;
  x.rho22 = 1.0 + 2.0 * a.A.real();
  x.rho33 = std::norm(a.X) + (a.U2 * a.V2 + std::norm(a.l));
  x.rho44 = a.U2;
  x.rho14 = a.l;
  x.rho23 = std::conj(a.X);
  x.norm = x.rho11 + x.rho22 + x.rho33 + x.rho44;
  return x;
}

inline double concurrence_1d(const LineGeometry& g) {
  return qinfo::concurrence_xstate(reduced_state_1d(g));
}

// Excitation probability of qubit B at strict second order; the
// normalization is kept at the same order, where it is exactly one, so the
// result is manifestly independent of the separation (microcausality at
// this order).
inline double excitation_probability_B(const LineGeometry& g) {
  g.validate();
  return f_minus(g.tau(), g.K);
}

// Conservative bound on the neglected higher-order contributions to the
// concurrence: 2|X|^3 from multi-photon exchange plus the radiative and
// exchange corrections to the |U|^2 |V|^2 product.
inline double perturbative_error_bound(const LineGeometry& g) {
  const AmplitudeSet a = amplitudes_1d(g);
  const double ax = std::abs(a.X);
  return 2.0 * ax * ax * ax + 2.0 * std::abs(a.A) * a.U2 * a.V2 +
         2.0 * ax * a.U2 * a.V2;
}

// ---------------------------------------------------------------------------
// Fermi problem
// ---------------------------------------------------------------------------

struct FermiConfig {
  double K_A;
  double K_B;
  double rho;                    // Omega r / v
  std::vector<double> time_grid;  // in units of v t / r

  void validate() const {
    if (!(K_A > 0.0) || !(K_B > 0.0)) {
      throw std::invalid_argument("FermiConfig: couplings must be > 0");
    }
    if (!(rho > 0.0)) throw std::invalid_argument("FermiConfig: rho must be > 0");
    for (std::size_t i = 1; i < time_grid.size(); ++i) {
      if (!(time_grid[i] > time_grid[i - 1])) {
        throw std::invalid_argument("FermiConfig: time grid must be increasing");
      }
    }
  }
};

namespace detail {

struct PoleFactor {
  double a;
  int m;
};

// c * w^p * e^{ifw} / prod (w - a_j)^{m_j}, proper rational part only;
// residue-based partial fractions into the canonical term sum.
inline void add_proper_rational(tabint::TermSum& ts, complexd c, int p, double f,
                                const std::vector<PoleFactor>& poles) {
  int deg = 0;
  for (const auto& q : poles) deg += q.m;
  if (p >= deg) throw std::domain_error("add_proper_rational: not proper");
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const double a = poles[j].a;
    // G_j(w) = w^p / prod_{l != j} (w - a_l)^{m_l}
    auto G = [&](double w) {
      double num = 1.0;
      for (int q = 0; q < p; ++q) num *= w;
      double den = 1.0;
      for (std::size_t l = 0; l < poles.size(); ++l) {
        if (l == j) continue;
        for (int q = 0; q < poles[l].m; ++q) den *= (w - poles[l].a);
      }
      return num / den;
    };
    if (poles[j].m == 1) {
      ts.add(c * G(a), 0, f, a, 1);
    } else if (poles[j].m == 2) {
      // G(a)/(w-a)^2 + G'(a)/(w-a)
      double gprime = p == 0 ? 0.0 : p * G(a) / a;  // d/dw w^p part
      if (p > 0 && a == 0.0) throw std::domain_error("pole at origin");
      double chain = 0.0;  // G * d/dw log(1/prod) part
      for (std::size_t l = 0; l < poles.size(); ++l) {
        if (l == j) continue;
        chain -= poles[l].m / (a - poles[l].a);
      }
      gprime += G(a) * chain;
      ts.add(c * G(a), 0, f, a, 2);
      ts.add(c * gprime, 0, f, a, 1);
    } else {
      throw std::domain_error("add_proper_rational: multiplicity > 2");
    }
  }
}

// Assembles int_0^inf dw w cos(w rho) Sum_d B_d(w, wf, t) in closed form.
// The six diagrams are the old-fashioned-perturbation-theory orderings of
// (exchange emission/absorption, final-photon emission) with the degenerate
// intermediate-state denominators already taken to their E'_g -> E_g limits.
inline complexd fermi_inner_integral(double wf, double t, double rho) {
  if (std::abs(wf - 1.0) < 1e-7) wf = 1.0 + (wf >= 1.0 ? 1e-7 : -1e-7);
  tabint::TermSum ts;
  const complexd sSf = S(wf + 1.0, t);
  const complexd spSf = S_prime(wf + 1.0, t);
  const complexd s2 = S(2.0, t);
  const double c2 = wf + 2.0;  // pole of s(Sigma_f - Delta) in w
  const complexd eC2 = std::exp(complexd(0.0, c2 * t));
  const complexd e1t = std::exp(complexd(0.0, t));
  const complexd eWf = std::exp(complexd(0.0, wf * t));
  const double Sf = wf + 1.0;
  const double Df = wf - 1.0;

  // every term carries w * cos(w rho); expand into e^{+i rho w}, e^{-i rho w}
  for (int sgn : {+1, -1}) {
    const double fr = sgn * rho;  // frequency of the cos half
    const complexd half(0.5, 0.0);

    // ---- B1 = s'(Sf) w/(w-1) + [s(Sf-Delta) - s(Sf)] w/(w-1)^2
    ts.add(half * spSf, 1, fr, 1.0, 1);
    // s(Sf-Delta) = -(eC2 e^{-iwt} - 1)/(w - c2)
    add_proper_rational(ts, -half * eC2, 1, fr - t, {{c2, 1}, {1.0, 2}});
    add_proper_rational(ts, half, 1, fr, {{c2, 1}, {1.0, 2}});
    add_proper_rational(ts, -half * sSf, 1, fr, {{1.0, 2}});

    // ---- B2 = [s(Sf) - s(-Delta)]/(Delta (Sf+Delta))
    //          - [s(Sf-Delta) - s(-Delta)]/(Delta Sf)
    // s(-Delta) = s(1-w) = -(e1t e^{-iwt} - 1)/(w-1)
    add_proper_rational(ts, half * sSf, 1, fr, {{1.0, 1}, {-wf, 1}});
    add_proper_rational(ts, half * e1t, 1, fr - t, {{1.0, 2}, {-wf, 1}});
    add_proper_rational(ts, -half, 1, fr, {{1.0, 2}, {-wf, 1}});
    add_proper_rational(ts, half * eC2 / Sf, 1, fr - t, {{c2, 1}, {1.0, 1}});
    add_proper_rational(ts, -half / Sf, 1, fr, {{c2, 1}, {1.0, 1}});
    add_proper_rational(ts, -half * e1t / Sf, 1, fr - t, {{1.0, 2}});
    add_proper_rational(ts, half / Sf, 1, fr, {{1.0, 2}});

    // ---- 2 B3 = (2/Df) { [s(Sf)-s(-Delta)]/(w+wf) - [s(2)-s(-Delta)]/(w+1) }
    {
      const complexd c = 2.0 * half / Df;
      ts.add(c * sSf, 1, fr, -wf, 1);
      add_proper_rational(ts, c * e1t, 1, fr - t, {{1.0, 1}, {-wf, 1}});
      add_proper_rational(ts, -c, 1, fr, {{1.0, 1}, {-wf, 1}});
      ts.add(-c * s2, 1, fr, -1.0, 1);
      add_proper_rational(ts, -c * e1t, 1, fr - t, {{1.0, 1}, {-1.0, 1}});
      add_proper_rational(ts, c, 1, fr, {{1.0, 1}, {-1.0, 1}});
    }

    // ---- B4 = s'(Sf) w/(w+1) + [s(wf-w) - s(Sf)] w/(w+1)^2
    ts.add(half * spSf, 1, fr, -1.0, 1);
    // s(wf - w) = -(eWf e^{-iwt} - 1)/(w - wf)
    add_proper_rational(ts, -half * eWf, 1, fr - t, {{wf, 1}, {-1.0, 2}});
    add_proper_rational(ts, half, 1, fr, {{wf, 1}, {-1.0, 2}});
    add_proper_rational(ts, -half * sSf, 1, fr, {{-1.0, 2}});

    // ---- B5 = [s(Sf)-s(-Delta)]/(Sigma (w+wf))
    //          - [s(wf-w)-s(-Delta)]/(Sigma Df)
    add_proper_rational(ts, half * sSf, 1, fr, {{-1.0, 1}, {-wf, 1}});
    add_proper_rational(ts, half * e1t, 1, fr - t, {{-1.0, 1}, {-wf, 1}, {1.0, 1}});
    add_proper_rational(ts, -half, 1, fr, {{-1.0, 1}, {-wf, 1}, {1.0, 1}});
    add_proper_rational(ts, half * eWf / Df, 1, fr - t, {{wf, 1}, {-1.0, 1}});
    add_proper_rational(ts, -half / Df, 1, fr, {{wf, 1}, {-1.0, 1}});
    add_proper_rational(ts, -half * e1t / Df, 1, fr - t, {{-1.0, 1}, {1.0, 1}});
    add_proper_rational(ts, half / Df, 1, fr, {{-1.0, 1}, {1.0, 1}});
  }
  return ts.evaluate();
}

}  // namespace detail

// The r-dependent third-order interference term 2 Re{M(1)* dM(3)} comes out
// of this complex integral as twice its real part; K_A K_B is factored in.
inline complexd delta_m3_interference(const FermiConfig& cfg, double t_over_rho) {
  cfg.validate();
  const double rho = cfg.rho;
  const double t = t_over_rho * rho;  // Omega t
  if (t == 0.0) return {0.0, 0.0};
  // outer integral over the final photon frequency
  auto outer = [&](double wf) -> complexd {
    if (wf <= 0.0) return {0.0, 0.0};
    const complexd q = detail::fermi_inner_integral(wf, t, rho);
    return wf * std::cos(wf * rho) * std::conj(detail::S(wf + 1.0, t)) * q;
  };
  specfun::QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.rel_tol = 1e-10;
  spec.max_subdivisions = 900;
  spec.upper_cutoff = 30.0 + 6.0 / std::max(0.3, std::min(rho, t));
  const double freq_scale = rho + 2.0 * t + 2.0;
  const complexd val =
      specfun::oscillatory_quadrature(outer, spec, pi / freq_scale).value;
  return 0.25 * cfg.K_A * cfg.K_B * val;
}

struct FermiProbabilities {
  double P_eB = 0.0;       // total excitation probability of B
  double P_eB_r = 0.0;     // its r-dependent part
  double P_eB_gA = 0.0;    // B excited and A in the ground state
};

inline FermiProbabilities fermi_probabilities(const FermiConfig& cfg,
                                              double t_over_rho) {
  cfg.validate();
  const double t = t_over_rho * cfg.rho;
  const double kx = std::sqrt(cfg.K_A * cfg.K_B);
  complexd X(0.0, 0.0), l(0.0, 0.0);
  if (t > 0.0) {
    X = 0.5 * kx * detail::exchange_integral(cfg.rho, t);
    l = 0.5 * kx * detail::cross_coherence_integral(cfg.rho, t);
  }
  const double fB = f_minus(t, cfg.K_B);
  const double fA = f_plus(t, cfg.K_A);
  FermiProbabilities out;
  out.P_eB_gA = std::norm(X) + fA * fB + std::norm(l);
  const double interf =
      t > 0.0 ? 2.0 * delta_m3_interference(cfg, t_over_rho).real() : 0.0;
  out.P_eB_r = std::norm(X) + std::norm(l) + interf;
  out.P_eB = fB + out.P_eB_gA + interf;
  return out;
}

// P(A decayed | B excited)
inline double conditioned_probability(const FermiConfig& cfg, double t_over_rho) {
  const FermiProbabilities p = fermi_probabilities(cfg, t_over_rho);
  if (!(p.P_eB > 0.0)) {
    throw std::domain_error("conditioned_probability: vanishing P_eB");
  }
  return p.P_eB_gA / p.P_eB;
}

// Landau-Zener survival of the diabatic ramp,
// P = exp(-(2 pi / hbar) (gap/2)^2 / (2 I_p ramp_rate)).
inline double landau_zener_probability(double gap, double ramp_rate,
                                       double persistent_current,
                                       double hbar = 1.0) {
  if (!(gap > 0.0) || !(ramp_rate > 0.0) || !(persistent_current > 0.0)) {
    throw std::invalid_argument("landau_zener_probability: inputs must be > 0");
  }
  const double half_gap = 0.5 * gap;
  return std::exp(-(2.0 * pi / hbar) * half_gap * half_gap /
                  (2.0 * persistent_current * ramp_rate));
}

}  // namespace lcq::circuit_qed
