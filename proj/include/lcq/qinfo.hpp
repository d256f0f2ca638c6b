// Entanglement measures and density-matrix utilities for small bipartite
// systems (two qubits, qubit x qutrit): Wootters concurrence, the X-state
// closed form, negativity, von Neumann entropy, I-concurrence, mutual
// information and partial traces.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace lcq::qinfo {

using complexd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline constexpr double hermiticity_tol = 1e-12;
inline constexpr double psd_tol = 1e-10;

// Complex square matrix with Hermiticity / unit-trace / positivity
// invariants, carrying its subsystem dimensions.
class DensityMatrix {
 public:
  DensityMatrix(MatrixXcd m, std::vector<int> dims) : rho_(std::move(m)), dims_(std::move(dims)) {
    if (rho_.rows() != rho_.cols()) {
      throw std::invalid_argument("DensityMatrix: matrix must be square");
    }
    long prod = 1;
    for (int d : dims_) {
      if (d < 1) throw std::invalid_argument("DensityMatrix: bad subsystem dim");
      prod *= d;
    }
    if (prod != rho_.rows()) {
      throw std::invalid_argument("DensityMatrix: dims do not match matrix size");
    }
    const double scale = std::max(1.0, rho_.norm());
    if ((rho_ - rho_.adjoint()).norm() > hermiticity_tol * scale) {
      throw std::invalid_argument("DensityMatrix: not Hermitian");
    }
    rho_ = 0.5 * (rho_ + rho_.adjoint().eval());
    const double tr = rho_.trace().real();
    if (!(tr > 0.0)) throw std::invalid_argument("DensityMatrix: nonpositive trace");
    rho_ /= tr;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol) {
      throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    }
  }

  static DensityMatrix from_pure(const VectorXcd& psi, std::vector<int> dims) {
    const double n = psi.norm();
    if (!(n > 0)) throw std::invalid_argument("from_pure: zero vector");
    VectorXcd u = psi / n;
    return DensityMatrix(u * u.adjoint(), std::move(dims));
  }

  const MatrixXcd& matrix() const { return rho_; }
  const std::vector<int>& dims() const { return dims_; }
  long size() const { return rho_.rows(); }

 private:
  MatrixXcd rho_;
  std::vector<int> dims_;
};

// Spectrum of a Hermitian matrix with tiny negative eigenvalues clipped.
inline VectorXd clipped_spectrum(const MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  VectorXd ev = es.eigenvalues();
  for (long i = 0; i < ev.size(); ++i) ev[i] = std::max(ev[i], 0.0);
  return ev;
}

inline double vn_entropy(const DensityMatrix& rho) {
  const VectorXd p = clipped_spectrum(rho.matrix());
  double s = 0.0;
  for (long i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) s -= p[i] * std::log2(p[i]);
  }
  return s;
}

// Binary entropy -(1-eta)log2(1-eta) - eta log2(eta); maximal (=1) at 1/2.
inline double entropy_of_entanglement_eta(double eta) {
  if (eta < -1e-12 || eta > 1.0 + 1e-12) {
    throw std::invalid_argument("entropy_of_entanglement_eta: eta outside [0,1]");
  }
  eta = std::clamp(eta, 0.0, 1.0);
  double s = 0.0;
  if (eta > 0.0) s -= eta * std::log2(eta);
  if (eta < 1.0) s -= (1.0 - eta) * std::log2(1.0 - eta);
  return s;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
  const auto& dims = rho.dims();
  if (dims.size() != 2) throw std::invalid_argument("partial_trace: bipartite dims required");
  if (keep != 0 && keep != 1) throw std::invalid_argument("partial_trace: keep must be 0 or 1");
  const int da = dims[0], db = dims[1];
  const MatrixXcd& m = rho.matrix();
  if (keep == 0) {
    MatrixXcd out = MatrixXcd::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return DensityMatrix(out, {da});
  }
  MatrixXcd out = MatrixXcd::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return DensityMatrix(out, {db});
}

// Wootters concurrence of a two-qubit state. The spectrum of rho rho~ is
// obtained through the Hermitian similarity sqrt(rho) rho~ sqrt(rho), which
// shares it and is numerically stable.
inline double concurrence(const DensityMatrix& rho) {
  if (rho.dims() != std::vector<int>{2, 2}) {
    throw std::invalid_argument("concurrence: requires a 2x2 (x) 2x2 state");
  }
  const MatrixXcd& m = rho.matrix();
  MatrixXcd yy(4, 4);
  yy.setZero();
  // sigma_y (x) sigma_y in the |ee>,|eg>,|ge>,|gg> ordering
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const MatrixXcd mt = yy * m.conjugate() * yy;

  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  VectorXd ev = es.eigenvalues();
  for (long i = 0; i < 4; ++i) ev[i] = std::sqrt(std::max(ev[i], 0.0));
  const MatrixXcd sqrt_rho =
      es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  const MatrixXcd herm = sqrt_rho * mt * sqrt_rho;
  VectorXd lam = clipped_spectrum(herm);
  std::sort(lam.data(), lam.data() + lam.size(), std::greater<double>());
  // suppress eigensolver noise that the square root would amplify
  for (long i = 1; i < 4; ++i) {
    if (lam[i] < 1e-12 * lam[0]) lam[i] = 0.0;
  }
  const double c = std::sqrt(lam[0]) - std::sqrt(lam[1]) - std::sqrt(lam[2]) -
                   std::sqrt(lam[3]);
  return std::max(0.0, c);
}

// Two-qubit density matrix supported on the diagonal and anti-diagonal, in
// the |ee>,|eg>,|ge>,|gg> basis. `norm` need not be 1; entries are raw.
struct XStateCoefficients {
  double rho11 = 0.0, rho22 = 0.0, rho33 = 0.0, rho44 = 0.0;
  complexd rho14{0.0, 0.0}, rho23{0.0, 0.0};
  double norm = 1.0;

  void require_physical(double tol = 1e-9) const {
    if (rho11 < -tol || rho22 < -tol || rho33 < -tol || rho44 < -tol) {
      throw std::invalid_argument("XState: negative population");
    }
    if (std::norm(rho14) > rho11 * rho44 + tol ||
        std::norm(rho23) > rho22 * rho33 + tol) {
      throw std::invalid_argument("XState: coherence bound violated");
    }
  }

  MatrixXcd embed() const {
    MatrixXcd m(4, 4);
    m.setZero();
    m(0, 0) = rho11;
    m(1, 1) = rho22;
    m(2, 2) = rho33;
    m(3, 3) = rho44;
    m(0, 3) = rho14;
    m(3, 0) = std::conj(rho14);
    m(1, 2) = rho23;
    m(2, 1) = std::conj(rho23);
    return m / norm;
  }
};

inline double concurrence_xstate(const XStateCoefficients& x) {
  if (x.rho11 < -1e-12 || x.rho22 < -1e-12 || x.rho33 < -1e-12 || x.rho44 < -1e-12) {
    throw std::invalid_argument("concurrence_xstate: negative population");
  }
  const double a = std::abs(x.rho23) - std::sqrt(std::max(0.0, x.rho11 * x.rho44));
  const double b = std::abs(x.rho14) - std::sqrt(std::max(0.0, x.rho22 * x.rho33));
  return (2.0 / x.norm) * std::max({a, b, 0.0});
}

// Partial transpose with respect to subsystem `cut` (0 = first).
inline MatrixXcd partial_transpose(const MatrixXcd& m, int da, int db, int cut) {
  MatrixXcd out(m.rows(), m.cols());
  for (int ia = 0; ia < da; ++ia)
    for (int ja = 0; ja < da; ++ja)
      for (int ib = 0; ib < db; ++ib)
        for (int jb = 0; jb < db; ++jb) {
          if (cut == 0) {
            out(ia * db + ib, ja * db + jb) = m(ja * db + ib, ia * db + jb);
          } else {
            out(ia * db + ib, ja * db + jb) = m(ia * db + jb, ja * db + ib);
          }
        }
  return out;
}

// Negativity with the factor-two convention: N = -2 sum(negative eigenvalues
// of the partial transpose). Equals the concurrence on pure bipartite states.
inline double negativity(const DensityMatrix& rho, int cut) {
  const auto& dims = rho.dims();
  if (dims.size() != 2) throw std::invalid_argument("negativity: bipartite dims required");
  if (cut != 0 && cut != 1) throw std::invalid_argument("negativity: cut must be 0 or 1");
  const MatrixXcd pt = partial_transpose(rho.matrix(), dims[0], dims[1], cut);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (long i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()[i];
    if (v < 0.0) neg += v;
  }
  return -2.0 * neg;
}

// Coefficients of the 6x6 atom-field reduced state in the ordering
// |e0>,|e1>,|e2>,|g0>,|g1>,|g2> (atom x photon-number), carrying only the
// entries that are populated at second order.
struct AtomFieldCoefficients {
  double r11 = 0.0, r22 = 0.0, r33 = 0.0, r44 = 0.0, r55 = 0.0, r66 = 0.0;
  complexd r13{0, 0}, r15{0, 0}, r24{0, 0}, r26{0, 0}, r35{0, 0}, r46{0, 0};

  double norm() const { return r11 + r22 + r33 + r44 + r55 + r66; }

  MatrixXcd embed() const {
    MatrixXcd m(6, 6);
    m.setZero();
    m(0, 0) = r11;
    m(1, 1) = r22;
    m(2, 2) = r33;
    m(3, 3) = r44;
    m(4, 4) = r55;
    m(5, 5) = r66;
    auto set = [&m](int i, int j, complexd v) {
      m(i, j) = v;
      m(j, i) = std::conj(v);
    };
    set(0, 2, r13);
    set(0, 4, r15);
    set(1, 3, r24);
    set(1, 5, r26);
    set(2, 4, r35);
    set(3, 5, r46);
    return m / norm();
  }
};

struct Negativity2x3Result {
  double negativity = 0.0;          // |sum of negative closed-form eigenvalues|
  double lambda_minus = 0.0;        // from the (e0, g1) block
  double lambda_prime_minus = 0.0;  // from the (e1, g0) block
  bool branch_24_negative = false;  // |r24|^2 > r11 r55
  bool branch_15_negative = false;  // |r15|^2 > r22 r44
};

// Closed-form negativity of the 6x6 atom-field state truncated to second
// order: the partial transpose has two 2x2 blocks, (e0,g1) coupled by r24
// and (e1,g0) coupled by r15; the remaining eigenvalues vanish at this order.
inline Negativity2x3Result negativity_2x3_closed(const AtomFieldCoefficients& c) {
  const double n = c.norm();
  if (!(n > 0)) throw std::invalid_argument("negativity_2x3_closed: empty state");
  Negativity2x3Result out;
  const double d1 = c.r11 - c.r55;
  out.lambda_minus =
      (c.r11 + c.r55 - std::sqrt(d1 * d1 + 4.0 * std::norm(c.r24))) / (2.0 * n);
  const double d2 = c.r44 - c.r22;
  out.lambda_prime_minus =
      (c.r22 + c.r44 - std::sqrt(d2 * d2 + 4.0 * std::norm(c.r15))) / (2.0 * n);
  out.branch_24_negative = std::norm(c.r24) > c.r11 * c.r55;
  out.branch_15_negative = std::norm(c.r15) > c.r22 * c.r44;
  double neg = 0.0;
  if (out.lambda_minus < 0.0) neg += out.lambda_minus;
  if (out.lambda_prime_minus < 0.0) neg += out.lambda_prime_minus;
  out.negativity = -neg;
  return out;
}

// I-concurrence of a bipartition: sqrt(2 (1 - Tr rho_J^2)).
inline double i_concurrence(const DensityMatrix& reduced) {
  const double purity = (reduced.matrix() * reduced.matrix()).trace().real();
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

inline double mutual_information(const DensityMatrix& rho) {
  if (rho.dims().size() != 2) {
    throw std::invalid_argument("mutual_information: bipartite dims required");
  }
  const double sa = vn_entropy(partial_trace(rho, 0));
  const double sb = vn_entropy(partial_trace(rho, 1));
  const double sab = vn_entropy(rho);
  return sa + sb - sab;
}

}  // namespace lcq::qinfo
