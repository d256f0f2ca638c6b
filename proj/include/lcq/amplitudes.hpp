// Second-order transition amplitudes for one geometry, shared between the
// 3-D atomic and 1-D transmission-line engines.

#pragma once

#include <complex>
#include <stdexcept>

namespace lcq {

enum class AmplitudeVariant { FromEG, FromEE };

// A:  intra-qubit radiative correction
// X:  exchange amplitude (the only genuine interaction term at this order)
// U2: |U_A|^2, emission with de-excitation     V2: |V_B|^2, counter-rotating
// l:  <0|S_A+ S_B+|0> single-photon cross contraction
// uv: same-site <U V*> contraction             ub_ua: <U_B U_A*>
// va_vb: <V_A V_B*>
struct AmplitudeSet {
  std::complex<double> A{0.0, 0.0};
  std::complex<double> X{0.0, 0.0};
  double U2 = 0.0;
  double V2 = 0.0;
  std::complex<double> l{0.0, 0.0};
  std::complex<double> uv{0.0, 0.0};
  std::complex<double> ub_ua{0.0, 0.0};
  std::complex<double> va_vb{0.0, 0.0};
  AmplitudeVariant variant = AmplitudeVariant::FromEG;

  void require_finite() const {
    auto ok = [](std::complex<double> z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    };
    if (!ok(A) || !ok(X) || !ok(l) || !ok(uv) || !ok(ub_ua) || !ok(va_vb) ||
        !std::isfinite(U2) || !std::isfinite(V2)) {
      throw std::runtime_error("AmplitudeSet: non-finite entry");
    }
    if (U2 < 0.0 || V2 < 0.0) {
      throw std::runtime_error("AmplitudeSet: negative emission probability");
    }
  }
};

}  // namespace lcq
