#include "lcq/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace lcq::specfun;
using std::complex;

namespace {

// Independent oracle: straightforward adaptive quadrature of the defining
// integrals, never touching the series/continued-fraction implementations.
double si_oracle(double x) {
  // si(x) = int_0^x sin t / t dt - pi/2
  auto f = [](double t) { return complexd(t == 0.0 ? 1.0 : std::sin(t) / t, 0.0); };
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;
  return integrate_adaptive(f, 0.0, x, spec).value_or_throw().real() - pi / 2;
}

double ci_oracle(double x) {
  // Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt
  auto f = [](double t) {
    return complexd(t == 0.0 ? 0.0 : (std::cos(t) - 1.0) / t, 0.0);
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-13;
  return euler_gamma + std::log(x) +
         integrate_adaptive(f, 0.0, x, spec).value_or_throw().real();
}

}  // namespace

TEST(SineIntegral, AtZero) {
  EXPECT_NEAR(sine_integral_si(0.0), -pi / 2, 1e-15);
  EXPECT_NEAR(sine_integral_Si(0.0), 0.0, 1e-15);
}

TEST(SineIntegral, AtOneMatchesQuadratureOracle) {
  // adaptive quadrature of sin(t)/t on [0,1] minus pi/2
  EXPECT_NEAR(sine_integral_si(1.0), si_oracle(1.0), 1e-12);
  EXPECT_NEAR(sine_integral_si(1.0), -0.62471325642771360429, 1e-10);
}

TEST(SineIntegral, TailDecays) { EXPECT_LT(std::abs(sine_integral_si(50.0)), 0.02); }

TEST(SineIntegral, OddSymmetry) {
  for (double x : {0.3, 1.0, 2.7, 5.0, 9.0, 30.0}) {
    EXPECT_NEAR(sine_integral_Si(-x), -sine_integral_Si(x), 1e-14);
  }
}

TEST(SineIntegral, DerivativeIsSinc) {
  // d/dx Si(x) = sin(x)/x by central differences
  const double h = 1e-5;
  for (double x : {0.3, 1.0, 5.0}) {
    const double num = (sine_integral_Si(x + h) - sine_integral_Si(x - h)) / (2 * h);
    EXPECT_NEAR(num, std::sin(x) / x, 1e-8);
  }
}

TEST(SineIntegral, RejectsNonFinite) {
  EXPECT_THROW(sine_integral_si(std::nan("")), std::invalid_argument);
  EXPECT_THROW(sine_integral_si(std::numeric_limits<double>::infinity()),
               std::invalid_argument);
}

TEST(SineIntegral, MatchesOracleOnGrid) {
  for (double x = 0.25; x < 40.0; x *= 1.7) {
    EXPECT_NEAR(sine_integral_si(x), si_oracle(x), 2e-12) << "x=" << x;
  }
}

TEST(CosineIntegral, AtOneMatchesSeries) {
  // gamma + ln x + sum (-1)^k x^{2k} / (2k (2k)!)
  double sum = 0.0, term = 1.0;
  const double x = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= -x * x / ((2.0 * k - 1) * (2.0 * k));
    sum += term / (2 * k);
  }
  EXPECT_NEAR(cosine_integral_Ci(1.0), euler_gamma + std::log(x) + sum, 1e-14);
  EXPECT_NEAR(cosine_integral_Ci(1.0), 0.33740392290096813466, 1e-10);
}

TEST(CosineIntegral, LogDivergenceAtZero) {
  EXPECT_LT(cosine_integral_Ci(1e-8), -17.0);
}

TEST(CosineIntegral, AtHalfPiMatchesOracle) {
  EXPECT_NEAR(cosine_integral_Ci(pi / 2), ci_oracle(pi / 2), 1e-12);
  EXPECT_NEAR(cosine_integral_Ci(pi / 2), 0.47200065143956865077, 1e-9);
}

TEST(CosineIntegral, RejectsNonPositive) {
  EXPECT_THROW(cosine_integral_Ci(0.0), std::invalid_argument);
  EXPECT_THROW(cosine_integral_Ci(-1.0), std::invalid_argument);
}

TEST(CosineIntegral, MatchesOracleOnGrid) {
  for (double x = 0.1; x < 40.0; x *= 1.9) {
    EXPECT_NEAR(cosine_integral_Ci(x), ci_oracle(x), 2e-12) << "x=" << x;
  }
}

TEST(CosineIntegral, SeriesCrossoverConsistent) {
  // values straddling the series / continued-fraction switch agree with the
  // quadrature oracle on both sides
  for (double x : {7.9, 7.99, 8.01, 8.5}) {
    EXPECT_NEAR(cosine_integral_Ci(x), ci_oracle(x), 2e-12);
    EXPECT_NEAR(sine_integral_si(x), si_oracle(x), 2e-12);
  }
}

TEST(ExpIntegralImag, ConjugationSymmetry) {
  for (double y : {0.5, 2.0, 10.0}) {
    const complexd a = exp_integral_imag(y);
    const complexd b = exp_integral_imag(-y);
    EXPECT_NEAR(b.real(), a.real(), 1e-14);
    EXPECT_NEAR(b.imag(), -a.imag(), 1e-14);
  }
}

TEST(ExpIntegralImag, RealPartIsCi) {
  EXPECT_NEAR(exp_integral_imag(1.0).real(), cosine_integral_Ci(1.0), 1e-14);
}

TEST(ExpIntegralImag, RejectsZero) {
  EXPECT_THROW(exp_integral_imag(0.0), std::invalid_argument);
}

TEST(ExpIntegralImag, TabulatedIntegralVerification) {
  // int_0^inf e^{i w}/(w + 1) dw = -e^{-i} Ei(i)   (gamma = 1, beta = 1)
  QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  spec.rel_tol = 1e-11;
  spec.upper_cutoff = 50.0;
  auto f = [](double w) {
    return std::exp(complexd(0.0, w)) / (w + 1.0);
  };
  const complexd lhs = oscillatory_quadrature(f, spec, pi).value_or_throw();
  const complexd rhs = -std::exp(complexd(0.0, -1.0)) * exp_integral_imag(1.0);
  EXPECT_NEAR(lhs.real(), rhs.real(), 1e-8);
  EXPECT_NEAR(lhs.imag(), rhs.imag(), 1e-8);
}

TEST(OscillatoryQuadrature, DirichletIntegral) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-10;
  spec.rel_tol = 1e-10;
  spec.upper_cutoff = 60.0;
  auto f = [](double t) {
    return complexd(t == 0.0 ? 1.0 : std::sin(t) / t, 0.0);
  };
  const complexd v = oscillatory_quadrature(f, spec, pi).value_or_throw();
  EXPECT_NEAR(v.real(), pi / 2, 1e-8);
  EXPECT_NEAR(v.imag(), 0.0, 1e-10);
}

TEST(OscillatoryQuadrature, TabulatedCosineOverPole) {
  // int_0^inf cos(k g)/(k + b) dk = -sin(gb) si(gb) - cos(gb) Ci(gb), g=1, b=2
  QuadratureSpec spec;
  spec.abs_tol = 1e-9;
  spec.rel_tol = 1e-9;
  spec.upper_cutoff = 80.0;
  auto f = [](double k) { return complexd(std::cos(k) / (k + 2.0), 0.0); };
  const double expected = -std::sin(2.0) * sine_integral_si(2.0) -
                          std::cos(2.0) * cosine_integral_Ci(2.0);
  const complexd v = oscillatory_quadrature(f, spec, pi).value_or_throw();
  EXPECT_NEAR(v.real(), expected, 1e-6);
}

TEST(OscillatoryQuadrature, PolynomialSanity) {
  QuadratureSpec spec;
  auto f = [](double t) { return complexd(t, 0.0); };
  const complexd v = integrate_adaptive(f, 0.0, 1.0, spec).value_or_throw();
  EXPECT_NEAR(v.real(), 0.5, 1e-14);
}

TEST(OscillatoryQuadrature, NonConvergenceIsReported) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-14;
  spec.rel_tol = 1e-14;
  spec.max_subdivisions = 2;
  spec.upper_cutoff = 5.0;
  // rapidly oscillating integrand that two subdivisions cannot resolve
  auto f = [](double t) { return complexd(std::sin(200.0 * t * t), 0.0); };
  QuadratureResult r = integrate_adaptive(f, 0.0, 5.0, spec);
  EXPECT_FALSE(r.converged);
  EXPECT_THROW(r.value_or_throw(), std::runtime_error);
}

TEST(QuadratureSpecValidation, RejectsBadFields) {
  QuadratureSpec s;
  s.abs_tol = -1.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = QuadratureSpec{};
  s.max_subdivisions = 0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = QuadratureSpec{};
  s.upper_cutoff = 0.0;
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

// The four tabulated semi-infinite integrals against the oscillatory
// quadrature, over a 5x5 grid of (gamma, beta) in [0.2, 5]^2.
TEST(TabulatedIntegrals, GridAgreement) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-9;
  spec.rel_tol = 1e-9;
  spec.upper_cutoff = 120.0;
  const double grid[5] = {0.2, 0.8, 1.7, 3.0, 5.0};
  for (double g : grid) {
    for (double b : grid) {
      const double m = g * b;
      const double si_m = sine_integral_si(m);
      const double ci_m = cosine_integral_Ci(m);
      const double sgb = std::sin(m), cgb = std::cos(m);
      const double seg = pi / g;

      auto cos_plus = [&](double k) { return complexd(std::cos(g * k) / (k + b), 0.0); };
      EXPECT_NEAR(oscillatory_quadrature(cos_plus, spec, seg).value_or_throw().real(),
                  -sgb * si_m - cgb * ci_m, 1e-6)
          << "cos,+ g=" << g << " b=" << b;

      auto sin_plus = [&](double k) { return complexd(std::sin(g * k) / (k + b), 0.0); };
      EXPECT_NEAR(oscillatory_quadrature(sin_plus, spec, seg).value_or_throw().real(),
                  sgb * ci_m - cgb * si_m, 1e-6)
          << "sin,+ g=" << g << " b=" << b;

      // principal value across the pole at k = b: integrate symmetrically
      auto cos_minus = [&](double k) {
        const double d = k - b;
        if (std::abs(d) < 1e-13) return complexd(0.0, 0.0);
        return complexd(std::cos(g * k) / d, 0.0);
      };
      // PV via pairing k -> 2b - k on [0, 2b], then plain integral beyond
      auto cos_minus_pv = [&](double k) {
        // evaluates f(b + u) + f(b - u) for u in (0, b]
        const double u = k;
        if (u <= 0.0 || u > b) return complexd(0.0, 0.0);
        return complexd((std::cos(g * (b + u)) - std::cos(g * (b - u))) / u, 0.0);
      };
      QuadratureSpec pv_spec = spec;
      const complexd inner =
          integrate_adaptive(cos_minus_pv, 0.0, b, pv_spec).value_or_throw();
      auto cos_minus_outer = [&](double k) {
        return complexd(std::cos(g * (k + 2.0 * b)) / (k + b), 0.0);
      };
      const complexd outer =
          oscillatory_quadrature(cos_minus_outer, spec, seg).value_or_throw();
      EXPECT_NEAR((inner + outer).real(), -sgb * si_m - cgb * ci_m - pi * sgb, 2e-6)
          << "cos,- g=" << g << " b=" << b;

      auto sin_minus_pv = [&](double u) {
        if (u <= 0.0 || u > b) return complexd(0.0, 0.0);
        return complexd((std::sin(g * (b + u)) - std::sin(g * (b - u))) / u, 0.0);
      };
      const complexd inner_s =
          integrate_adaptive(sin_minus_pv, 0.0, b, pv_spec).value_or_throw();
      auto sin_minus_outer = [&](double k) {
        return complexd(std::sin(g * (k + 2.0 * b)) / (k + b), 0.0);
      };
      const complexd outer_s =
          oscillatory_quadrature(sin_minus_outer, spec, seg).value_or_throw();
      EXPECT_NEAR((inner_s + outer_s).real(), -sgb * ci_m + cgb * si_m + pi * cgb, 2e-6)
          << "sin,- g=" << g << " b=" << b;
    }
  }
}
