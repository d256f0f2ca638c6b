// 3-D atomic QED engine: closed-form second-order amplitudes for two
// two-level atoms coupled to the electromagnetic vacuum through their
// electric dipoles, the projected / traced / entangled-initial state
// builders, and their entanglement observables.
//
// Everything is expressed in the dimensionless variables z = Omega r / c and
// x = r / (c t); T = 1/x = c t / r, tau = Omega t = z / x. The dimensionless
// coupling K = alpha |d|^2 / (e r)^2 = alpha dipole_ratio^2 / z^2.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "lcq/amplitudes.hpp"
#include "lcq/qinfo.hpp"
#include "lcq/specfun.hpp"
#include "lcq/tabulated_integrals.hpp"

namespace lcq::atom_qed {

using specfun::complexd;
using specfun::pi;

inline constexpr double fine_structure = 7.2973525693e-3;

enum class DipoleOrientation { DeltaMZero, DeltaMPlusMinusOne, Averaged };

struct AtomPairGeometry {
  double z;                     // Omega r / c
  double x;                     // r / (c t)
  double dipole_ratio = 5e-3;   // Omega |d| / (e c); hydrogen 1s->2p scale
  DipoleOrientation delta_m = DipoleOrientation::DeltaMZero;
  double zmax_over_z = 366.4;   // c / (Omega a0) at the default dipole scale

  double K() const { return fine_structure * dipole_ratio * dipole_ratio / (z * z); }
  double T() const { return 1.0 / x; }
  double tau() const { return z / x; }

  void validate() const {
    if (!(z > 0.0)) throw std::invalid_argument("AtomPairGeometry: z must be > 0");
    if (!(x > 0.0)) throw std::invalid_argument("AtomPairGeometry: x must be > 0");
    if (!(dipole_ratio > 0.0)) {
      throw std::invalid_argument("AtomPairGeometry: dipole_ratio must be > 0");
    }
    if (std::abs(x - 1.0) < 1e-12) {
      throw std::domain_error("AtomPairGeometry: x = 1 lies on the light cone");
    }
  }
};

namespace detail {

// Angular kernels P(a) = a^3 * (projector integral)/(4 pi), a = k r.
// Transverse dipoles (perpendicular to the separation): (a^2-1) sin a + a cos a.
// Longitudinal: 2 (sin a - a cos a). Delta m = +-1 with the atoms in the
// plane orthogonal to the quantization axis mixes them half and half.
struct KernelPiece {
  double coeff;
  int pow;
  bool is_sin;
};

inline std::vector<KernelPiece> kernel_pieces(DipoleOrientation d) {
  const std::vector<KernelPiece> transverse = {
      {1.0, 2, true}, {-1.0, 0, true}, {1.0, 1, false}};
  const std::vector<KernelPiece> longitudinal = {{2.0, 0, true}, {-2.0, 1, false}};
  switch (d) {
    case DipoleOrientation::DeltaMZero: return transverse;
    case DipoleOrientation::DeltaMPlusMinusOne: {
      std::vector<KernelPiece> mixed;
      for (auto p : transverse) {
        p.coeff *= 0.5;
        mixed.push_back(p);
      }
      for (auto p : longitudinal) {
        p.coeff *= 0.5;
        mixed.push_back(p);
      }
      return mixed;
    }
    case DipoleOrientation::Averaged:
      throw std::logic_error("kernel_pieces: averaged handled one level up");
  }
  throw std::logic_error("kernel_pieces: bad orientation");
}

// Adds kernel piece * e^{i phi a} / (a - pole)^m expanded over the two trig
// exponentials e^{+-ia}.
inline void add_kernel_term(tabint::TermSum& ts, const std::vector<KernelPiece>& kernel,
                            complexd coeff, double phi, double pole, int order) {
  for (const auto& piece : kernel) {
    for (int s : {+1, -1}) {
      complexd trig = piece.is_sin ? complexd(0.0, -0.5 * s)  // 1/(2i) * s
                                   : complexd(0.5, 0.0);
      ts.add(coeff * piece.coeff * trig, piece.pow, s + phi, pole, order);
    }
  }
}

// sigma(y) = (e^{iyT}-1)/(iy); shat(y) = (e^{iyT}-1)/y; both entire with
// sigma(0) = T, shat(0) = iT.
inline complexd shat(double y, double T) {
  if (std::abs(y * T) < 1e-8) return complexd(0.0, T) - y * T * T / 2.0;
  return (std::exp(complexd(0.0, y * T)) - 1.0) / y;
}
inline complexd sigma_hat(double y, double T) { return shat(y, T) / complexd(0.0, 1.0); }

// Exchange amplitude for |eg>: X = -(K/pi) Int P(a) [ghat(z-a)+ghat(-z-a)] da
// with ghat(y) = (iT - shat(y))/y. Returns the integral (no prefactor).
inline complexd exchange_eg_integral(double z, double T,
                                     const std::vector<KernelPiece>& kernel) {
  tabint::TermSum ts;
  const complexd i1(0.0, 1.0);
  const complexd ez = std::exp(complexd(0.0, z * T));
  // ghat(z-a)  = -iT/(a-z) - (e^{izT} e^{-iaT} - 1)/(a-z)^2
  add_kernel_term(ts, kernel, -i1 * T, 0.0, z, 1);
  add_kernel_term(ts, kernel, -ez, -T, z, 2);
  add_kernel_term(ts, kernel, complexd(1.0, 0.0), 0.0, z, 2);
  // ghat(-z-a) = -iT/(a+z) - (e^{-izT} e^{-iaT} - 1)/(a+z)^2
  add_kernel_term(ts, kernel, -i1 * T, 0.0, -z, 1);
  add_kernel_term(ts, kernel, -1.0 / ez, -T, -z, 2);
  add_kernel_term(ts, kernel, complexd(1.0, 0.0), 0.0, -z, 2);
  return ts.evaluate();
}

// Cross contraction l = (K/pi) Int P(a) shat(z-a) shat(z+a) da; the product
// equals -[e^{2izT} + 1 - 2 e^{izT} cos(aT)] / (a^2 - z^2); the returned
// value is the bracketed integral, so callers apply -(K/pi).
inline complexd cross_l_integral(double z, double T,
                                 const std::vector<KernelPiece>& kernel) {
  tabint::TermSum ts;
  const complexd ez = std::exp(complexd(0.0, z * T));
  const complexd e2 = ez * ez;
  for (int s : {+1, -1}) {
    const double a0 = s * z;
    const complexd c = s / (2.0 * z);  // 1/(a^2-z^2) = (1/2z)[1/(a-z)-1/(a+z)]
    add_kernel_term(ts, kernel, c * (e2 + 1.0), 0.0, a0, 1);
    add_kernel_term(ts, kernel, -c * ez, +T, a0, 1);
    add_kernel_term(ts, kernel, -c * ez, -T, a0, 1);
  }
  return ts.evaluate();
}

// p_UU = (K/pi) Int P(a) (2 - 2cos((a-z)T)) / (a-z)^2 da  (and p_VV with
// z -> -z). Both are real.
inline complexd photon_pair_integral(double z, double T, double pole_sign,
                                     const std::vector<KernelPiece>& kernel) {
  tabint::TermSum ts;
  const double a0 = pole_sign;  // +z or -z passed via pole_sign * z below
  (void)a0;
  const double pole = pole_sign * z;
  const complexd ez = std::exp(complexd(0.0, -pole_sign * z * T));
  // 2 - 2cos((a - pole)T) = 2 - e^{-i pole T} e^{iaT} - e^{+i pole T} e^{-iaT}
  add_kernel_term(ts, kernel, complexd(2.0, 0.0), 0.0, pole, 2);
  add_kernel_term(ts, kernel, -ez, +T, pole, 2);
  add_kernel_term(ts, kernel, -std::conj(ez), -T, pole, 2);
  return ts.evaluate();
}

// Vacuum pair amplitudes for |ee> and |gg> branches, without prefactor:
//   X'  : Int P(a) [ -i sigma(-2z)/(a-z) + (e^{-izT} e^{-iaT} - 1)/((z+a)(a-z)) ] da
//   X'' : Int P(a) [ -i sigma(+2z)/(a+z) - (e^{+izT} e^{-iaT} - 1)/((a-z)(a+z)) ] da
// from the ordered two-vertex kernels T2(-(z+a), a-z) and T2(z-a, z+a).
inline complexd exchange_ee_integral(double z, double T,
                                     const std::vector<KernelPiece>& kernel) {
  tabint::TermSum ts;
  const complexd i1(0.0, 1.0);
  const complexd s2z = sigma_hat(-2.0 * z, T);
  const complexd ez = std::exp(complexd(0.0, -z * T));
  add_kernel_term(ts, kernel, -i1 * s2z, 0.0, z, 1);
  for (int s : {+1, -1}) {
    const complexd c = s / (2.0 * z);
    add_kernel_term(ts, kernel, -c * ez, -T, s * z, 1);
    add_kernel_term(ts, kernel, c, 0.0, s * z, 1);
  }
  return ts.evaluate();
}

inline complexd exchange_gg_integral(double z, double T,
                                     const std::vector<KernelPiece>& kernel) {
  tabint::TermSum ts;
  const complexd i1(0.0, 1.0);
  const complexd s2z = sigma_hat(2.0 * z, T);
  const complexd ez = std::exp(complexd(0.0, z * T));
  add_kernel_term(ts, kernel, -i1 * s2z, 0.0, -z, 1);
  for (int s : {+1, -1}) {
    const complexd c = s / (2.0 * z);
    add_kernel_term(ts, kernel, -c * ez, -T, s * z, 1);
    add_kernel_term(ts, kernel, c, 0.0, s * z, 1);
  }
  return ts.evaluate();
}

// Renormalized single-atom emission integrals, (2 K z^2 / 3 pi) h+-(tau)
// with h+-(tau) = pi tau +- 2 (cos tau + tau Si(tau) - 1).
inline double h_envelope(double tau, int sign) {
  const double core =
      2.0 * (std::cos(tau) + tau * specfun::sine_integral_Si(tau) - 1.0);
  return pi * tau + (sign > 0 ? core : -core);
}

}  // namespace detail

// Full amplitude set for the |eg 0> initial state.
inline AmplitudeSet amplitudes_eg(const AtomPairGeometry& g) {
  g.validate();
  if (g.delta_m == DipoleOrientation::Averaged) {
    throw std::invalid_argument(
        "amplitudes_eg: averaging applies to observables, not amplitudes");
  }
  const auto kernel = detail::kernel_pieces(g.delta_m);
  const double K = g.K(), T = g.T(), tau = g.tau();
  AmplitudeSet a;
  a.variant = AmplitudeVariant::FromEG;
  const double same_site = 2.0 * K * g.z * g.z / (3.0 * pi);
  a.U2 = same_site * detail::h_envelope(tau, +1);
  a.V2 = same_site * detail::h_envelope(tau, -1);
  a.uv = same_site * std::exp(complexd(0.0, -tau)) * std::sin(tau);
  // radiative correction: the real part is pinned by unitarity of the O(d^2)
  // state, the imaginary (level-shift) part carries the dipole-representation
  // cutoff z_max; the U and V channel logs nearly cancel for |eg>.
  const double u = g.zmax_over_z;
  a.A = complexd(-0.5 * (a.U2 + a.V2),
                 2.0 * K * std::pow(g.z, 3) / (3.0 * pi * g.x) *
                     std::log(std::abs((1.0 - u) / (1.0 + u))));
  a.X = -(K / pi) * detail::exchange_eg_integral(g.z, T, kernel);
  a.l = -(K / pi) * detail::cross_l_integral(g.z, T, kernel);
  a.ub_ua = (K / pi) * detail::photon_pair_integral(g.z, T, +1.0, kernel);
  a.va_vb = (K / pi) * detail::photon_pair_integral(g.z, T, -1.0, kernel);
  a.require_finite();
  return a;
}

// Amplitude set for the |ee 0> initial state; `l` holds the one-photon
// coherence l' = <0|S_A+ S_B-|0> = -<U_A U_B*>.
inline AmplitudeSet amplitudes_ee(const AtomPairGeometry& g) {
  g.validate();
  if (g.delta_m == DipoleOrientation::Averaged) {
    throw std::invalid_argument(
        "amplitudes_ee: averaging applies to observables, not amplitudes");
  }
  const auto kernel = detail::kernel_pieces(g.delta_m);
  const double K = g.K(), T = g.T(), tau = g.tau();
  AmplitudeSet a;
  a.variant = AmplitudeVariant::FromEE;
  const double same_site = 2.0 * K * g.z * g.z / (3.0 * pi);
  a.U2 = same_site * detail::h_envelope(tau, +1);
  a.V2 = same_site * detail::h_envelope(tau, -1);
  a.uv = same_site * std::exp(complexd(0.0, -tau)) * std::sin(tau);
  // both atoms decay: Re A' = -|U|^2 by unitarity, twice the single-channel
  // level shift in the imaginary part
  const double u = g.zmax_over_z;
  a.A = complexd(-a.U2, 4.0 * K * std::pow(g.z, 3) / (3.0 * pi * g.x) *
                            std::log(std::abs(1.0 - u)));
  a.X = -(2.0 * K / pi) * detail::exchange_ee_integral(g.z, T, kernel);
  a.ub_ua = (K / pi) * detail::photon_pair_integral(g.z, T, +1.0, kernel);
  a.va_vb = (K / pi) * detail::photon_pair_integral(g.z, T, -1.0, kernel);
  a.l = -a.ub_ua;
  a.require_finite();
  return a;
}

// ---------------------------------------------------------------------------
// Two-photon contraction table. All pair quantities reduce to the six
// single-photon contractions {U2, V2, uv, l, ub_ua, va_vb}.
// ---------------------------------------------------------------------------

namespace detail {

struct PairQuantities {
  double FF = 0.0;          // |F|^2
  double GG = 0.0;          // |G|^2
  complexd FG{0.0, 0.0};    // F G*
};

// |eg> initial state: F = same-site pair emission, G = one photon per atom.
inline PairQuantities pair_quantities_eg(const AmplitudeSet& a) {
  PairQuantities p;
  const double puu = a.ub_ua.real(), pvv = a.va_vb.real();
  p.FF = 0.5 * (a.U2 * a.V2 + std::norm(a.uv) + puu * pvv + (a.l * a.l).real());
  p.GG = a.U2 * a.V2 + std::norm(a.l);
  p.FG = 0.5 * (a.U2 * a.va_vb + a.V2 * a.ub_ua + std::conj(a.uv) * std::conj(a.l) +
                a.uv * a.l);
  return p;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Projected observables (n = 0, 1, 2 photons in the final state)
// ---------------------------------------------------------------------------

struct ProjectedResult {
  double concurrence = 0.0;
  double eta = 0.0;       // entanglement parameter eta_n
  double entropy = 0.0;   // binary entropy of eta_n
  double norm2 = 0.0;     // c_n^2
};

inline ProjectedResult projected(int n, const AmplitudeSet& a) {
  if (n < 0 || n > 2) throw std::invalid_argument("projected: n must be 0, 1 or 2");
  ProjectedResult r;
  const complexd one_plus_a = 1.0 + a.A;
  if (a.variant == AmplitudeVariant::FromEG) {
    const auto pq = detail::pair_quantities_eg(a);
    switch (n) {
      case 0: {
        r.norm2 = std::norm(one_plus_a) + std::norm(a.X);
        r.concurrence = 2.0 * std::abs(a.X) * std::abs(one_plus_a) / r.norm2;
        r.eta = std::norm(a.X) / r.norm2;
        break;
      }
      case 1: {
        r.norm2 = a.U2 + a.V2;
        r.concurrence = 2.0 * std::abs(a.l) / r.norm2;
        r.eta = a.V2 / r.norm2;
        break;
      }
      case 2: {
        r.norm2 = pq.FF + pq.GG;
        r.concurrence = 2.0 * std::abs(pq.FG) / r.norm2;
        r.eta = pq.GG / r.norm2;
        break;
      }
    }
  } else {
    // |ee> initial state: F' and G' both land on {|ee>, |gg>} for n = 0, 2;
    // n = 1 lives on {|ge>, |eg>} with the U-U coherence.
    const double puu = a.ub_ua.real(), pvv = a.va_vb.real();
    switch (n) {
      case 0: {
        r.norm2 = std::norm(one_plus_a) + std::norm(a.X);
        r.concurrence = 2.0 * std::abs(a.X) * std::abs(one_plus_a) / r.norm2;
        r.eta = std::norm(a.X) / r.norm2;
        break;
      }
      case 1: {
        r.norm2 = 2.0 * a.U2;
        r.concurrence = 2.0 * std::abs(a.l) / r.norm2;
        r.eta = 0.5;
        break;
      }
      case 2: {
        const double ff =
            0.5 * (a.U2 * a.V2 + std::norm(a.uv) + puu * pvv + (a.l * a.l).real());
        const double gg = a.U2 * a.U2 + puu * puu;
        const complexd fg = 0.5 * (a.U2 * std::conj(a.uv) + a.uv * a.U2 +
                                   a.ub_ua * std::conj(a.l) + a.l * a.ub_ua);
        r.norm2 = ff + gg;
        r.concurrence = 2.0 * std::abs(fg) / r.norm2;
        r.eta = gg / r.norm2;
        break;
      }
    }
  }
  if (!(r.norm2 > 0.0)) {
    throw std::domain_error("projected: vanishing normalization c_n");
  }
  r.entropy = qinfo::entropy_of_entanglement_eta(std::clamp(r.eta, 0.0, 1.0));
  return r;
}

inline double projected_concurrence(int n, const AmplitudeSet& a) {
  return projected(n, a).concurrence;
}
inline double projected_entropy(int n, const AmplitudeSet& a) {
  return projected(n, a).entropy;
}

// Field-traced atomic state for the |eg> initial state (X-state form).
inline qinfo::XStateCoefficients traced_state(const AmplitudeSet& a) {
  if (a.variant != AmplitudeVariant::FromEG) {
    throw std::invalid_argument("traced_state: FromEG amplitudes required");
  }
  const auto pq = detail::pair_quantities_eg(a);
  const complexd one_plus_a = 1.0 + a.A;
  qinfo::XStateCoefficients xs;
  xs.rho11 = a.V2;
  xs.rho22 = std::norm(one_plus_a) + pq.FF;
  xs.rho33 = std::norm(a.X) + pq.GG;
  xs.rho44 = a.U2;
  xs.rho14 = a.l;
  xs.rho23 = one_plus_a * std::conj(a.X) + pq.FG;
  xs.norm = xs.rho11 + xs.rho22 + xs.rho33 + xs.rho44;
  return xs;
}

// ---------------------------------------------------------------------------
// Bell-analyzer swapping (section 3.2 geometry)
// ---------------------------------------------------------------------------

struct DetectorAngles {
  double theta_k = pi / 2;
  double phi_k = pi / 4;
  double theta_kp = pi / 2;
  double phi_kp = 3 * pi / 4;
};

inline double bell_j_factor(double omega_t) {
  const complexd e = std::exp(complexd(0.0, 2.0 * omega_t));
  return std::abs(-1.0 + e * (1.0 - complexd(0.0, 2.0 * omega_t))) /
         (omega_t * omega_t);
}

// Concurrence of the projected atomic state when a |Psi+> (or |Phi+>)
// two-photon Bell state is detected at resonance |k| = |k'| = Omega/c.
inline double bell_swap_concurrence(double z, double omega_t,
                                    const DetectorAngles& ang = {}) {
  if (!(z > 0.0) || !(omega_t > 0.0)) {
    throw std::invalid_argument("bell_swap_concurrence: z, Omega t must be > 0");
  }
  const double h_plus =
      std::sin(ang.theta_k) * std::sin(ang.phi_k) +
      std::sin(ang.theta_kp) * std::sin(ang.phi_kp);
  const double h_minus =
      std::sin(ang.theta_k) * std::sin(ang.phi_k) -
      std::sin(ang.theta_kp) * std::sin(ang.phi_kp);
  const double cp = std::cos(0.5 * z * h_plus);
  const double cm = std::cos(0.5 * z * h_minus);
  if (std::abs(cp) < 1e-300 && std::abs(cm) < 1e-300) {
    throw std::domain_error("bell_swap_concurrence: both cosine factors vanish");
  }
  const double j = bell_j_factor(omega_t);
  return 4.0 * std::abs(cp * cm) / (cp * cp * j + cm * cm * 4.0 / j);
}

// Resonant detection at |k| = |k'| = Omega/c ties the swap to the pair
// geometry through z and Omega t = z/x.
inline double bell_swap_concurrence(const AtomPairGeometry& g,
                                    const DetectorAngles& ang = {}) {
  g.validate();
  return bell_swap_concurrence(g.z, g.tau(), ang);
}

// ---------------------------------------------------------------------------
// Entanglement sudden death / revival (section 3.3)
// ---------------------------------------------------------------------------

namespace detail {

// All pair contractions for one dipole orientation, |ee>/|gg> superposition.
struct EsdAmplitudes {
  complexd Ap, App;  // A', A''
  complexd Xp, Xpp;  // X', X''
  double FU = 0.0, FV = 0.0;
  complexd w{0, 0}, l{0, 0};
  double puu = 0.0, pvv = 0.0;
  // two-photon contraction scalars
  double G1G1 = 0.0, G2G2 = 0.0, FF = 0.0;     // |G'|^2, |G''|^2, |F'|^2=|F''|^2
  complexd FG1{0, 0};   // F' G'*
  complexd FG2{0, 0};   // F' G''*
  complexd G2G1{0, 0};  // G'' G'*
};

inline EsdAmplitudes esd_amplitudes(const AtomPairGeometry& g) {
  const auto kernel = kernel_pieces(g.delta_m);
  const double K = g.K(), T = g.T(), tau = g.tau();
  EsdAmplitudes e;
  const double same_site = 2.0 * K * g.z * g.z / (3.0 * pi);
  e.FU = same_site * h_envelope(tau, +1);
  e.FV = same_site * h_envelope(tau, -1);
  e.w = same_site * std::exp(complexd(0.0, -tau)) * std::sin(tau);
  e.l = -(K / pi) * cross_l_integral(g.z, T, kernel);
  e.puu = ((K / pi) * photon_pair_integral(g.z, T, +1.0, kernel)).real();
  e.pvv = ((K / pi) * photon_pair_integral(g.z, T, -1.0, kernel)).real();
  e.Xp = -(2.0 * K / pi) * exchange_ee_integral(g.z, T, kernel);
  e.Xpp = -(2.0 * K / pi) * exchange_gg_integral(g.z, T, kernel);
  // per-branch radiative corrections: decaying |ee> branch loses norm at the
  // full emission rate, the |gg> branch only through the counter-rotating
  // channel; level shifts carry the z_max cutoff with opposite channel signs
  const double u = g.zmax_over_z;
  const double shift = 4.0 * K * std::pow(g.z, 3) / (3.0 * pi * g.x);
  e.Ap = complexd(-e.FU, shift * std::log(std::abs(1.0 - u)));
  e.App = complexd(-e.FV, -shift * std::log(1.0 + u));
  // contraction table
  e.G1G1 = e.FU * e.FU + e.puu * e.puu;
  e.G2G2 = e.FV * e.FV + e.pvv * e.pvv;
  e.FF = 0.5 * (e.FU * e.FV + std::norm(e.w) + e.puu * e.pvv + (e.l * e.l).real());
  e.FG1 = e.puu * std::conj(e.w) + e.FU * e.l;
  e.FG2 = e.pvv * e.w + e.FV * std::conj(e.l);
  e.G2G1 = e.w * e.w + std::conj(e.l) * std::conj(e.l);
  return e;
}

struct EsdState {
  qinfo::XStateCoefficients atoms;      // rho_AB of Eq-(33i) form
  qinfo::AtomFieldCoefficients field;   // rho_BF of Eq-(33p) form (scalars)
};

inline EsdState esd_state_single(double p, const AtomPairGeometry& g) {
  const EsdAmplitudes e = esd_amplitudes(g);
  const double al = std::sqrt(p), be = std::sqrt(1.0 - p);
  const complexd oa = 1.0 + e.Ap, ob = 1.0 + e.App;

  const double rp11 = std::norm(al * oa + be * e.Xpp);
  const double rp44 = std::norm(al * e.Xp + be * ob);
  const double rho22 = al * al * e.FU + be * be * e.FV + 2.0 * al * be * e.l.real();
  const double rp33 = al * al * e.FF + be * be * e.G2G2 +
                      2.0 * al * be * e.FG2.real();
  const double rp66 = al * al * e.G1G1 + be * be * e.FF +
                      2.0 * al * be * (std::conj(e.FG1)).real();

  EsdState s;
  auto& xs = s.atoms;
  xs.rho11 = rp11 + rp33;
  xs.rho22 = rho22;
  xs.rho33 = rho22;
  xs.rho44 = rp44 + rp66;
  xs.rho14 = al * al * (oa * std::conj(e.Xp) + e.FG1) +
             be * be * (std::conj(ob) * e.Xpp + std::conj(e.FG2)) +
             al * be * (oa * ob + e.FF) +
             al * be * (e.Xpp * std::conj(e.Xp) + e.G2G1);
  xs.rho23 = al * al * e.puu + be * be * e.pvv + 2.0 * al * be * e.w.real();
  xs.norm = xs.rho11 + xs.rho22 + xs.rho33 + xs.rho44;

  auto& af = s.field;
  af.r11 = rp11;
  af.r22 = rho22;
  af.r33 = rp33;
  af.r44 = rp44;
  af.r55 = rho22;
  af.r66 = rp66;
  const double mu = std::sqrt(std::max(rho22, 0.0));
  af.r24 = mu * std::conj(al * e.Xp + be * ob);
  af.r15 = (al * oa + be * e.Xpp) * mu;
  return s;
}

inline EsdState esd_state_detail(double p, const AtomPairGeometry& g) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("esd: p outside [0,1]");
  g.validate();
  if (g.delta_m != DipoleOrientation::Averaged) return esd_state_single(p, g);
  AtomPairGeometry g0 = g;
  g0.delta_m = DipoleOrientation::DeltaMZero;
  AtomPairGeometry g1 = g;
  g1.delta_m = DipoleOrientation::DeltaMPlusMinusOne;
  const EsdState a = esd_state_single(p, g0);
  const EsdState b = esd_state_single(p, g1);
  auto mixc = [](complexd u, complexd v) { return 0.5 * (u + v); };
  EsdState m;
  m.atoms.rho11 = 0.5 * (a.atoms.rho11 + b.atoms.rho11);
  m.atoms.rho22 = 0.5 * (a.atoms.rho22 + b.atoms.rho22);
  m.atoms.rho33 = 0.5 * (a.atoms.rho33 + b.atoms.rho33);
  m.atoms.rho44 = 0.5 * (a.atoms.rho44 + b.atoms.rho44);
  m.atoms.rho14 = mixc(a.atoms.rho14, b.atoms.rho14);
  m.atoms.rho23 = mixc(a.atoms.rho23, b.atoms.rho23);
  m.atoms.norm = 0.5 * (a.atoms.norm + b.atoms.norm);
  m.field.r11 = 0.5 * (a.field.r11 + b.field.r11);
  m.field.r22 = 0.5 * (a.field.r22 + b.field.r22);
  m.field.r33 = 0.5 * (a.field.r33 + b.field.r33);
  m.field.r44 = 0.5 * (a.field.r44 + b.field.r44);
  m.field.r55 = 0.5 * (a.field.r55 + b.field.r55);
  m.field.r66 = 0.5 * (a.field.r66 + b.field.r66);
  m.field.r24 = mixc(a.field.r24, b.field.r24);
  m.field.r15 = mixc(a.field.r15, b.field.r15);
  return m;
}

}  // namespace detail

// Atomic X-state of the initially entangled pair sqrt(p)|ee> + sqrt(1-p)|gg>.
inline qinfo::XStateCoefficients esd_state(double p, const AtomPairGeometry& g) {
  return detail::esd_state_detail(p, g).atoms;
}

struct AtomFieldResult {
  double negativity = 0.0;
  qinfo::AtomFieldCoefficients coefficients;
};

// Atom-field negativity from the closed-form partial-transpose eigenvalues.
inline AtomFieldResult esd_atom_field(double p, const AtomPairGeometry& g) {
  const auto s = detail::esd_state_detail(p, g);
  AtomFieldResult r;
  r.coefficients = s.field;
  r.negativity = qinfo::negativity_2x3_closed(s.field).negativity;
  return r;
}

struct BipartitionResult {
  double c_atom_rest = 0.0;   // C_{A-BF} = C_{B-AF}
  double c_field_rest = 0.0;  // C_{F-AB}
};

// I-concurrences of the atom-(rest) and field-(rest) bipartitions.
inline BipartitionResult esd_bipartitions(double p, const AtomPairGeometry& g) {
  const auto s = detail::esd_state_detail(p, g);
  const auto& f = s.field;
  const double rho22 = f.r22;
  BipartitionResult out;
  {
    const double a11 = f.r11 + f.r33 + rho22;
    const double a22 = f.r44 + f.r66 + rho22;
    const double n = a11 + a22;
    const double purity = (a11 * a11 + a22 * a22) / (n * n);
    out.c_atom_rest = std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
  }
  {
    const double f11 = f.r11 + f.r44;
    const double f22 = 2.0 * rho22;
    const double f33 = f.r33 + f.r66;
    const double n = f11 + f22 + f33;
    const double purity = (f11 * f11 + f22 * f22 + f33 * f33) / (n * n);
    out.c_field_rest = std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle (tests only): direct momentum quadrature of the defining
// integrals with the non-decaying oscillation handled through its Abel value.
// ---------------------------------------------------------------------------

struct OracleAmplitudes {
  complexd X{0, 0};
  complexd X_ee{0, 0};
  complexd l{0, 0};
  double U2 = 0.0;
  double V2 = 0.0;
};

namespace detail {

inline double kernel_value(const std::vector<KernelPiece>& kernel, double a) {
  double v = 0.0;
  for (const auto& p : kernel) {
    double base = 1.0;
    for (int q = 0; q < p.pow; ++q) base *= a;
    v += p.coeff * base * (p.is_sin ? std::sin(a) : std::cos(a));
  }
  return v;
}

// d/dy (e^{iyT}-1)/y
inline complexd shat_prime(double y, double T) {
  if (std::abs(y * T) < 1e-5) {
    return complexd(-T * T / 2.0, -y * T * T * T / 3.0);
  }
  const complexd e = std::exp(complexd(0.0, y * T));
  return (complexd(0.0, T) * e * y - e + 1.0) / (y * y);
}

}  // namespace detail

inline OracleAmplitudes oracle_amplitudes(const AtomPairGeometry& g,
                                          double rel_tol = 1e-6) {
  g.validate();
  const auto kernel = detail::kernel_pieces(
      g.delta_m == DipoleOrientation::Averaged ? DipoleOrientation::DeltaMZero
                                               : g.delta_m);
  const double K = g.K(), T = g.T(), z = g.z, tau = g.tau();
  OracleAmplitudes out;

  specfun::QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  spec.rel_tol = rel_tol * 1e-2;
  spec.upper_cutoff = std::max(60.0, 4.0 * z);
  spec.max_subdivisions = 8000;
  const double seg = pi / (1.0 + T + 0.2);

  auto P = [&kernel](double a) { return detail::kernel_value(kernel, a); };
  auto sh = [T](double y) { return detail::shat(y, T); };

  {  // X (|eg>): subtract M(a) = -2iT(a sin a + cos a)
     //            - 2 cos(zT) sin(a) e^{-iaT} + 2 sin(a); Abel value below.
    auto gh = [&](double y) -> complexd {
      if (std::abs(y) < 1e-7) {
        return complexd(T * T / 2.0, y * T * T * T / 6.0);
      }
      return (complexd(0.0, T) - sh(y)) / y;
    };
    auto f = [&](double a) -> complexd {
      const complexd body = P(a) * (gh(z - a) + gh(-z - a));
      const complexd model =
          complexd(0.0, -2.0 * T) * (a * std::sin(a) + std::cos(a)) -
          2.0 * std::cos(z * T) * std::sin(a) * std::exp(complexd(0.0, -a * T)) +
          2.0 * std::sin(a);
      return body - model;
    };
    const complexd abel = -2.0 * std::cos(z * T) / (1.0 - T * T) + 2.0;
    const complexd integral =
        specfun::oscillatory_quadrature(f, spec, seg).value + abel;
    out.X = -(K / pi) * integral;
  }

  {  // l: subtract M(a) = sin(a) (e^{2izT}+1) - 2 e^{izT} sin(a) cos(aT)
    const complexd ez = std::exp(complexd(0.0, z * T));
    auto f = [&](double a) -> complexd {
      const double den = a * a - z * z;
      complexd body;
      if (std::abs(den) < 1e-7) {
        body = -P(a) * sh(z - a) * sh(z + a);  // removable point
      } else {
        body = P(a) * (ez * ez + 1.0 - 2.0 * ez * std::cos(a * T)) / den;
      }
      const complexd model =
          std::sin(a) * (ez * ez + 1.0) - 2.0 * ez * std::sin(a) * std::cos(a * T);
      return body - model;
    };
    const complexd abel = (ez * ez + 1.0) - 2.0 * ez / (1.0 - T * T);
    out.l = -(K / pi) * (specfun::oscillatory_quadrature(f, spec, seg).value + abel);
  }

  {  // X' (|ee>): integrand P(a) T2 with T2 = [sigma(-2z)-sigma(-(z+a))]/(i(a-z));
     // non-decaying part M(a) = -i sigma(-2z) (a sin a + cos a)
     //                          - e^{-izT} sin(a) e^{-iaT} + sin(a).
    const complexd s2z = detail::sigma_hat(-2.0 * z, T);
    const complexd ez = std::exp(complexd(0.0, -z * T));
    auto f = [&](double a) -> complexd {
      complexd t2;
      const double b = a - z;
      if (std::abs(b) < 1e-7) {
        // (1/(ib))[sigma(ap+b)-sigma(ap)] -> -i sigma'(ap) = -shat'(ap)
        t2 = -detail::shat_prime(-(z + a), T);
      } else {
        t2 = (s2z - detail::sigma_hat(-(z + a), T)) / complexd(0.0, b);
      }
      const complexd model =
          -complexd(0.0, 1.0) * s2z * (a * std::sin(a) + std::cos(a)) -
          ez * std::sin(a) * std::exp(complexd(0.0, -a * T)) + std::sin(a);
      return P(a) * t2 - model;
    };
    const complexd abel = -ez / (1.0 - T * T) + 1.0;
    out.X_ee =
        -(2.0 * K / pi) * (specfun::oscillatory_quadrature(f, spec, seg).value + abel);
  }

  {  // U2, V2: renormalized emission integrals. After the counterterm
     // subtractions only the double-pole part of k^3/(k -+ 1)^2 survives:
     //   U2 = pref * int_{-1}^inf 2 (1 - cos(u tau)) / u^2 du,
     //   V2 = pref * int_{+1}^inf 2 (1 - cos(u tau)) / u^2 du,
     // both absolutely convergent.
    auto emission = [&](double lower) -> double {
      const double W = 200.0;
      auto f = [&](double u) -> complexd {
        if (std::abs(u) < 1e-9) return complexd(tau * tau, 0.0);
        return complexd(2.0 * (1.0 - std::cos(u * tau)) / (u * u), 0.0);
      };
      specfun::QuadratureSpec s2;
      s2.abs_tol = 1e-12;
      s2.rel_tol = 1e-10;
      s2.max_subdivisions = 6000;
      const double head =
          specfun::integrate_adaptive(f, lower, W, s2).value_or_throw().real();
      // analytic tail: int_W^inf 2/u^2 - 2cos(u tau)/u^2
      const double tail = 2.0 / W - 2.0 * (std::cos(W * tau) / W +
                                           tau * specfun::sine_integral_si(W * tau));
      return head + tail;
    };
    const double pref = 2.0 * K * z * z / (3.0 * pi);
    out.U2 = pref * emission(-1.0);
    out.V2 = pref * emission(+1.0);
  }
  return out;
}

}  // namespace lcq::atom_qed
