#include "lcq/circuit_qed.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

using namespace lcq;
using namespace lcq::circuit_qed;
using specfun::complexd;
using specfun::pi;

namespace {

// Brute-force oracle for the exchange amplitude: direct momentum quadrature
// of w cos(w rho) [g(1-w) + g(-1-w)] with the non-decaying -2it piece
// (whose Abel integral vanishes) subtracted. Uses only the generic
// quadrature, not the closed-form term table.
complexd exchange_oracle(double rho, double t, double rel = 1e-6) {
  auto g = [t](double c) -> complexd {
    if (std::abs(c) < 1e-6) {
      return complexd(t * t / 2.0, c * t * t * t / 6.0);
    }
    const complexd num = 1.0 + complexd(0.0, c * t) - std::exp(complexd(0.0, c * t));
    return num / (c * c);
  };
  auto f = [&](double w) -> complexd {
    const complexd body = w * (g(1.0 - w) + g(-1.0 - w)) + complexd(0.0, 2.0 * t);
    return std::cos(w * rho) * body;
  };
  specfun::QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  spec.rel_tol = rel * 1e-2;
  spec.upper_cutoff = 60.0;
  spec.max_subdivisions = 4000;
  return specfun::oscillatory_quadrature(f, spec, pi / (rho + t + 1.0)).value;
}

// Same for the single-photon cross contraction, integrand
// w cos(w rho) S(1-w,t) S(1+w,t); decays like 1/w, no subtraction needed.
complexd coherence_oracle(double rho, double t) {
  auto S = [t](double z) -> complexd {
    if (std::abs(z * t) < 1e-8) return complexd(0.0, t);
    return (std::exp(complexd(0.0, z * t)) - 1.0) / z;
  };
  auto f = [&](double w) -> complexd {
    return w * std::cos(w * rho) * S(1.0 - w) * S(1.0 + w);
  };
  specfun::QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  spec.rel_tol = 1e-9;
  spec.upper_cutoff = 60.0;
  spec.max_subdivisions = 4000;
  return specfun::oscillatory_quadrature(f, spec, pi / (rho + t + 1.0)).value;
}

LineGeometry geom(double rho, double xi, double K) { return LineGeometry{rho, xi, K}; }

}  // namespace

TEST(EmissionEnvelopes, SpecValueAtPi) {
  // f+ - f- = 2K (cos(pi) + pi Si(pi) - 1) = 2K (pi Si(pi) - 2) at K = 1
  const double t = pi;
  const double d = f_plus(t, 1.0) - f_minus(t, 1.0);
  const double expected = 2.0 * (pi * specfun::sine_integral_Si(pi) - 2.0);
  EXPECT_NEAR(d, expected, 1e-12);
}

TEST(EmissionEnvelopes, VanishAtZeroAndStayNonNegative) {
  EXPECT_NEAR(f_plus(0.0, 1.0), 0.0, 1e-14);
  EXPECT_NEAR(f_minus(0.0, 1.0), 0.0, 1e-14);
  for (double t = 0.05; t < 40.0; t += 0.37) {
    EXPECT_GE(f_plus(t, 1.0), -1e-12) << t;
    EXPECT_GE(f_minus(t, 1.0), -1e-12) << t;
  }
}

TEST(EmissionEnvelopes, CounterRotatingPartSaturates) {
  // f- stays bounded while f+ grows linearly (RWA decay)
  EXPECT_LT(f_minus(200.0, 1.0), 3.0);
  EXPECT_GT(f_plus(200.0, 1.0), 100.0);
}

TEST(Amplitudes1D, VanishAtZeroTime) {
  const AmplitudeSet a = amplitudes_1d(geom(pi / 4, 1e-9, 0.15));
  EXPECT_LT(std::abs(a.X), 1e-12);
  EXPECT_LT(std::abs(a.l), 1e-12);
  EXPECT_LT(a.U2, 1e-8);
  EXPECT_LT(a.V2, 1e-8);
}

TEST(Amplitudes1D, ConeRejected) {
  EXPECT_THROW(amplitudes_1d(geom(pi / 4, 1.0, 0.15)), std::domain_error);
}

TEST(Amplitudes1D, ExchangeMatchesQuadratureOracle) {
  for (double rho : {0.5, pi / 4, 2.0}) {
    for (double xi : {0.4, 0.8, 1.3, 1.9}) {
      const double t = rho * xi;
      const complexd closed = 2.0 * amplitudes_1d(geom(rho, xi, 1.0)).X;  // K=1 -> J
      const complexd oracle = exchange_oracle(rho, t);
      const double scale = std::max(1e-4, std::abs(oracle));
      EXPECT_LT(std::abs(closed - oracle) / scale, 1e-4)
          << "rho=" << rho << " xi=" << xi << " closed=" << closed
          << " oracle=" << oracle;
    }
  }
}

TEST(Amplitudes1D, CoherenceMatchesQuadratureOracle) {
  for (double rho : {0.5, pi / 4, 2.0}) {
    for (double xi : {0.4, 0.8, 1.3, 1.9}) {
      const double t = rho * xi;
      const complexd closed = 2.0 * amplitudes_1d(geom(rho, xi, 1.0)).l;
      const complexd oracle = coherence_oracle(rho, t);
      const double scale = std::max(1e-4, std::abs(oracle));
      EXPECT_LT(std::abs(closed - oracle) / scale, 1e-4)
          << "rho=" << rho << " xi=" << xi << " closed=" << closed
          << " oracle=" << oracle;
    }
  }
}

TEST(ReducedState1D, ZeroAmplitudesGiveProductState) {
  const auto x = reduced_state_1d(geom(pi / 4, 1e-10, k0_baseline));
  EXPECT_NEAR(x.rho22 / x.norm, 1.0, 1e-8);
  EXPECT_NEAR(qinfo::concurrence_xstate(x), 0.0, 1e-8);
}

TEST(ReducedState1D, BaselineCouplingIsPhysical) {
  const auto x = reduced_state_1d(geom(pi / 4, 0.5, k0_baseline));
  x.require_physical(1e-9);
  const double c = qinfo::concurrence_xstate(x);
  EXPECT_GE(c, 0.0);
  EXPECT_LE(c, 1.0);
}

TEST(ReducedState1D, VacuumRegionEntanglementAtStrongCoupling) {
  // a finite amount of entanglement appears just outside the light cone for
  // the strongest coupling
  const double K = 1000 * k0_baseline;
  const double c_out = concurrence_1d(geom(pi / 4, 0.98, K));
  EXPECT_GT(c_out, 0.0);
}

TEST(ReducedState1D, ConcurrenceJumpAcrossCone) {
  for (double mult : {1.0, 10.0, 100.0, 1000.0}) {
    const double K = mult * k0_baseline;
    const double below = concurrence_1d(geom(pi / 4, 0.95, K));
    const double above = concurrence_1d(geom(pi / 4, 1.05, K));
    EXPECT_GT(above, below) << "K/K0=" << mult;
    EXPECT_GT(above - below, 0.5 * above) << "K/K0=" << mult;
  }
}

TEST(ExcitationProbability, IndependentOfSeparationOutsideCone) {
  // r = lambda/12 and lambda/8 at equal lab time
  const double rho1 = 2.0 * pi / 12.0, rho2 = 2.0 * pi / 8.0;
  const double t = 0.4;  // Omega t, inside neither light cone? xi = t/rho < 1
  const double K = 1000 * k0_baseline;
  const double p1 = excitation_probability_B(geom(rho1, t / rho1, K));
  const double p2 = excitation_probability_B(geom(rho2, t / rho2, K));
  EXPECT_NEAR(p1, p2, 1e-14);
  EXPECT_NEAR(excitation_probability_B(geom(rho1, 1e-14, K)), 0.0, 1e-12);
}

TEST(PerturbativeErrorBound, ZeroAtZeroAmplitudesAndMonotoneInK) {
  EXPECT_NEAR(perturbative_error_bound(geom(pi / 4, 1e-10, k0_baseline)), 0.0, 1e-15);
  double prev = 0.0;
  for (double mult : {1.0, 10.0, 100.0}) {
    const double b = perturbative_error_bound(geom(pi / 4, 1.5, mult * k0_baseline));
    EXPECT_GT(b, prev);
    prev = b;
  }
}

TEST(PerturbativeErrorBound, SmallForRegionsOfInterest) {
  // bound below 1% of the leading concurrence for xi < 2 in the perturbative
  // coupling range
  for (double mult : {1.0, 10.0}) {
    for (double xi : {0.5, 1.2, 1.9}) {
      const auto g = geom(pi / 4, xi, mult * k0_baseline);
      const double c = concurrence_1d(g);
      if (c > 1e-9) {
        EXPECT_LT(perturbative_error_bound(g), 0.01 * c)
            << "xi=" << xi << " K/K0=" << mult;
      }
    }
  }
}

TEST(LandauZener, Limits) {
  EXPECT_NEAR(landau_zener_probability(1.0, 1e9, 1.0), 1.0, 1e-6);
  EXPECT_NEAR(landau_zener_probability(1.0, 1e-9, 1.0), 0.0, 1e-12);
}

TEST(LandauZener, DoublingGapFourthPowers) {
  const double p = landau_zener_probability(0.7, 2.3, 1.1);
  const double p2 = landau_zener_probability(1.4, 2.3, 1.1);
  EXPECT_NEAR(p2, std::pow(p, 4.0), 1e-12);
}

TEST(LandauZener, RejectsBadInput) {
  EXPECT_THROW(landau_zener_probability(0.0, 1.0, 1.0), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Fermi problem
// ---------------------------------------------------------------------------

namespace {

FermiConfig fermi_cfg(double rho, double K = 0.0225) {
  FermiConfig c;
  c.K_A = K;
  c.K_B = K;
  c.rho = rho;
  c.time_grid = {0.25, 0.5, 0.75, 1.25, 1.5};
  return c;
}

// Direct numeric evaluation of the six-diagram brace sum, used to
// cross-check the closed-form inner integral at modest accuracy.
complexd brace_sum_numeric(double w, double wf, double t) {
  auto S = [t](double z) -> complexd {
    if (std::abs(z * t) < 1e-8) return complexd(0.0, t) - z * t * t / 2.0;
    return (std::exp(complexd(0.0, z * t)) - 1.0) / z;
  };
  auto Sp = [t](double z) -> complexd {
    if (std::abs(z * t) < 1e-5) return complexd(-t * t / 2.0, -z * t * t * t / 3.0);
    const complexd e = std::exp(complexd(0.0, z * t));
    return (complexd(0.0, t) * e * z - e + 1.0) / (z * z);
  };
  const double D = w - 1.0, Sg = w + 1.0, Df = wf - 1.0, Sf = wf + 1.0;
  const complexd b1 = Sp(Sf) / D + (S(Sf - D) - S(Sf)) / (D * D);
  const complexd b2 =
      ((S(Sf) - S(-D)) / (Sf + D) - (S(Sf - D) - S(-D)) / Sf) / D;
  const complexd b3 =
      ((S(Sf) - S(-D)) / (w + wf) - (S(2.0) - S(-D)) / Sg) / Df;
  const complexd b4 = Sp(Sf) / Sg + (S(wf - w) - S(Sf)) / (Sg * Sg);
  const complexd b5 =
      ((S(Sf) - S(-D)) / (w + wf) - (S(wf - w) - S(-D)) / Df) / Sg;
  return b1 + b2 + 2.0 * b3 + b4 + b5;
}

}  // namespace

TEST(FermiInner, SFunctionLimit) {
  // S(z,t) -> it as z -> 0
  const complexd s = circuit_qed::detail::S(1e-12, 0.8);
  EXPECT_NEAR(s.real(), 0.0, 1e-10);
  EXPECT_NEAR(s.imag(), 0.8, 1e-10);
}

TEST(FermiInner, ClosedFormMatchesBruteForce) {
  // Abel-damped brute force with epsilon extrapolation
  const double rho = pi, t = 0.6 * pi, wf = 0.37;
  auto brute = [&](double eps) {
    auto f = [&](double w) -> complexd {
      if (std::abs(w - 1.0) < 1e-7) return complexd(0, 0);
      return w * std::cos(w * rho) * std::exp(-eps * w) *
             brace_sum_numeric(w, wf, t);
    };
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-10;
    spec.rel_tol = 1e-8;
    spec.max_subdivisions = 6000;
    spec.upper_cutoff = 10.0 + 16.0 / eps;
    return specfun::integrate_adaptive(f, 0.0, spec.upper_cutoff, spec).value;
  };
  // Richardson in eps: I(eps) ~ I0 + a eps + b eps^2
  const complexd i1 = brute(0.08), i2 = brute(0.04), i3 = brute(0.02);
  const complexd extrap = i3 + (i3 - i2) + ((i3 - i2) - (i2 - i1)) / 1.0 * 1.0 / 1.0 * 1.0 / 1.0 * (1.0 / 3.0) * 3.0 / 3.0;
  const complexd extrap2 = (8.0 * i3 - 6.0 * i2 + i1) / 3.0;  // quadratic in eps
  const complexd closed = circuit_qed::detail::fermi_inner_integral(wf, t, rho);
  EXPECT_LT(std::abs(closed - extrap2), 0.02 * std::max(1.0, std::abs(closed)))
      << "closed=" << closed << " brute=" << extrap2 << " lin=" << extrap;
}

TEST(FermiInterference, ZeroAtZeroTime) {
  const complexd v = delta_m3_interference(fermi_cfg(pi), 0.0);
  EXPECT_EQ(v, complexd(0.0, 0.0));
}

TEST(FermiProbabilities, CouplingScaling) {
  // P_eB_gA is proportional to K_A K_B: doubling K_A doubles it
  FermiConfig c1 = fermi_cfg(pi);
  FermiConfig c2 = c1;
  c2.K_A *= 2.0;
  const double p1 = fermi_probabilities(c1, 0.5).P_eB_gA;
  const double p2 = fermi_probabilities(c2, 0.5).P_eB_gA;
  EXPECT_NEAR(p2 / p1, 2.0, 1e-10);
}

TEST(FermiProbabilities, CorrelationPositiveEverywhere) {
  for (double x : {0.3, 0.7, 1.1, 1.6}) {
    EXPECT_GT(fermi_probabilities(fermi_cfg(pi), x).P_eB_gA, 0.0) << x;
  }
}

TEST(FermiCausality, CancellationInsideCone) {
  // the headline: the r-dependent probability vanishes for vt < r
  const FermiConfig cfg = fermi_cfg(pi);
  const double inside = std::abs(fermi_probabilities(cfg, 0.5).P_eB_r);
  const double outside = fermi_probabilities(cfg, 1.5).P_eB_r;
  EXPECT_GT(outside, 0.0);
  EXPECT_LT(inside, 1e-5 * outside)
      << "inside=" << inside << " outside=" << outside;
}

TEST(ConditionedProbability, BoundedAndRisesTowardsOne) {
  // self-excitations dominate at short times; the click tracks the decay of
  // the source only once real exchange overtakes them, i.e. on the K t scale
  FermiConfig cfg;
  cfg.K_A = cfg.K_B = 7.5e-3;
  cfg.rho = 1.0;  // 2 pi r / lambda = 1
  const double early = conditioned_probability(cfg, 0.3 / cfg.rho);
  const double mid = conditioned_probability(cfg, 2.0 * pi / cfg.rho);
  const double late = conditioned_probability(cfg, 8.0 * pi / cfg.rho);
  EXPECT_LT(early, 0.5);
  EXPECT_GT(mid, early);
  EXPECT_GT(late, 0.9);
  EXPECT_LE(late, 1.0 + 1e-9);
}
