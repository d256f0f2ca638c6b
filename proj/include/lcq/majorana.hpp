// Majorana Hamiltonians M_eta = A + i eta B K on finite Hilbert spaces, the
// complex -> real doubling, discrete symmetries as enlarged-space unitaries,
// 1+1 Dirac/Majorana wavepacket evolution with potentials (split-step
// spectral), pseudo-helicity, potential-removal phase transforms, and the
// two-body oscillator equations. Natural units hbar = c = 1.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcq/qinfo.hpp"

namespace lcq::majorana {

using complexd = std::complex<double>;
using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::Vector2cd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

inline const complexd I1{0.0, 1.0};

inline Matrix2cd pauli(int i) {
  Matrix2cd m = Matrix2cd::Zero();
  switch (i) {
    case 0: m.setIdentity(); break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I1, I1, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index 0..3");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Finite-dimensional Majorana operators and the doubling isomorphism
// ---------------------------------------------------------------------------

struct MajoranaOperator {
  MatrixXcd a_part;  // Hermitian
  MatrixXcd b_part;  // Hermitian and purely imaginary entrywise ({K,B} = 0)
  complexd eta{1.0, 0.0};

  void validate() const {
    if (a_part.rows() != a_part.cols() || b_part.rows() != b_part.cols() ||
        a_part.rows() != b_part.rows()) {
      throw std::invalid_argument("MajoranaOperator: square matching blocks");
    }
    const double s = std::max(1.0, a_part.norm() + b_part.norm());
    if ((a_part - a_part.adjoint()).norm() > 1e-12 * s) {
      throw std::invalid_argument("MajoranaOperator: A not Hermitian");
    }
    if ((b_part - b_part.adjoint()).norm() > 1e-12 * s) {
      throw std::invalid_argument("MajoranaOperator: B not Hermitian");
    }
    if (b_part.real().norm() > 1e-12 * s) {
      throw std::invalid_argument("MajoranaOperator: B must anticommute with K");
    }
    if (std::abs(std::abs(eta) - 1.0) > 1e-12) {
      throw std::invalid_argument("MajoranaOperator: |eta| = 1 required");
    }
  }
};

// Doubled Hamiltonian of M_1 = A + iBK on (Re psi, Im psi):
//   M2 = [[ i Im A, B + i Re A ], [ B - i Re A, i Im A ]]
// (entrywise real/imaginary parts). M2 is Hermitian on the doubled complex
// space and i M2 is real, so real vectors stay real under evolution.
inline MatrixXcd doubled_hamiltonian(const MatrixXcd& a, const MatrixXcd& b) {
  const long n = a.rows();
  const MatrixXcd re = a.real().cast<complexd>();
  const MatrixXcd im = a.imag().cast<complexd>();
  MatrixXcd m2(2 * n, 2 * n);
  m2.topLeftCorner(n, n) = I1 * im;
  m2.bottomRightCorner(n, n) = I1 * im;
  m2.topRightCorner(n, n) = b + I1 * re;
  m2.bottomLeftCorner(n, n) = b - I1 * re;
  return m2;
}

inline MatrixXcd doubled_hamiltonian(const MajoranaOperator& op) {
  op.validate();
  return doubled_hamiltonian(op.a_part, op.b_part);
}

// Hermitian observable lifted to the doubled space (all-real components):
// O2 = [[Re O, -Im O], [Im O, Re O]].
inline MatrixXcd doubled_observable(const MatrixXcd& o) {
  const long n = o.rows();
  MatrixXcd out(2 * n, 2 * n);
  const MatrixXcd re = o.real().cast<complexd>();
  const MatrixXcd im = o.imag().cast<complexd>();
  out.topLeftCorner(n, n) = re;
  out.bottomRightCorner(n, n) = re;
  out.topRightCorner(n, n) = -im;
  out.bottomLeftCorner(n, n) = im;
  return out;
}

// M^dag O M with M = (1  i1): the expectation-rule companion,
// <O>_psi = <Psi| M^dag O M |Psi>.
inline MatrixXcd expectation_lifted(const MatrixXcd& o) {
  const long n = o.rows();
  MatrixXcd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = o;
  out.topRightCorner(n, n) = I1 * o;
  out.bottomLeftCorner(n, n) = -I1 * o;
  out.bottomRightCorner(n, n) = o;
  return out;
}

inline VectorXcd double_state(const VectorXcd& psi) {
  const long n = psi.size();
  VectorXcd out(2 * n);
  out.head(n) = psi.real().cast<complexd>();
  out.tail(n) = psi.imag().cast<complexd>();
  return out;
}

inline VectorXcd undouble_state(const VectorXcd& big) {
  const long n = big.size() / 2;
  return big.head(n) + I1 * big.tail(n);
}

// Evolution under i d psi/dt = (A + i eta B K) psi. For eta != 1 the phase is
// traded for a global phase change: eta^{-1/2} psi evolves under M_1.
inline VectorXcd evolve_majorana_finite(const MajoranaOperator& op,
                                        const VectorXcd& psi0, double t) {
  op.validate();
  if (std::abs(psi0.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("evolve_majorana_finite: psi0 must be normalized");
  }
  const complexd root = std::sqrt(op.eta);
  VectorXcd psi = psi0 / root;
  const MatrixXcd m2 = doubled_hamiltonian(op.a_part, op.b_part);
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m2);
  VectorXcd big = double_state(psi);
  VectorXcd coef = es.eigenvectors().adjoint() * big;
  for (long i = 0; i < coef.size(); ++i) {
    coef(i) *= std::exp(-I1 * es.eigenvalues()(i) * t);
  }
  big = es.eigenvectors() * coef;
  return root * undouble_state(big);
}

// ---------------------------------------------------------------------------
// Discrete symmetries in the enlarged space (representation III.b fixed)
// ---------------------------------------------------------------------------

enum class SymmetryKind { K, C, T };
enum class Representation { IIIb };

// 4x4 unitaries acting on (Re psi_1, Re psi_2, Im psi_1, Im psi_2); the
// ancilla (Re/Im) factor comes first in the tensor ordering.
inline Matrix4cd symmetry_operator(SymmetryKind kind,
                                   Representation rep = Representation::IIIb) {
  if (rep != Representation::IIIb) {
    throw std::invalid_argument("symmetry_operator: only representation III.b");
  }
  auto kron = [](const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
  };
  switch (kind) {
    case SymmetryKind::K: return kron(pauli(3), pauli(0));
    case SymmetryKind::C: return -kron(pauli(3), pauli(1));
    case SymmetryKind::T: return kron(pauli(3), pauli(3));
  }
  throw std::invalid_argument("symmetry_operator: bad kind");
}

// ---------------------------------------------------------------------------
// 1+1 grid fields and split-step evolution
// ---------------------------------------------------------------------------

enum class EquationKind { Dirac, Majorana };

struct PotentialSpec {
  std::function<double(double)> f1;  // scalar
  std::function<double(double)> f2;  // sigma_z
  std::function<double(double)> f3;  // sigma_y
  std::function<double(double)> f4;  // sigma_x

  static PotentialSpec free_potential() { return {}; }

  double eval(int which, double x) const {
    const auto& f = which == 1 ? f1 : which == 2 ? f2 : which == 3 ? f3 : f4;
    return f ? f(x) : 0.0;
  }
  bool has(int which) const {
    const auto& f = which == 1 ? f1 : which == 2 ? f2 : which == 3 ? f3 : f4;
    return static_cast<bool>(f);
  }
};

struct SpinorField {
  double x_min = -30.0;
  double x_max = 30.0;
  double dt = 0.0;  // defaults to dx/2 when <= 0
  MatrixXcd components;  // n_components x n_points

  int n_points() const { return static_cast<int>(components.cols()); }
  int n_components() const { return static_cast<int>(components.rows()); }
  double dx() const { return (x_max - x_min) / n_points(); }
  double x_at(int j) const { return x_min + j * dx(); }
  double step() const { return dt > 0.0 ? dt : 0.5 * dx(); }

  void validate() const {
    const int n = n_points();
    if (n < 2 || (n & (n - 1)) != 0) {
      throw std::invalid_argument("SpinorField: n_points must be a power of two");
    }
    if (!(x_max > x_min)) throw std::invalid_argument("SpinorField: empty grid");
    if (n_components() != 2 && n_components() != 4) {
      throw std::invalid_argument("SpinorField: 2 or 4 components");
    }
    if (step() > dx() * (1.0 + 1e-12)) {
      throw std::invalid_argument("SpinorField: time step exceeds dx");
    }
  }

  double norm2() const { return components.squaredNorm() * dx(); }

  void normalize() {
    const double n = std::sqrt(norm2());
    if (!(n > 0)) throw std::invalid_argument("SpinorField: zero field");
    components /= n;
  }

  VectorXd density() const {
    VectorXd d(n_points());
    for (int j = 0; j < n_points(); ++j) d(j) = components.col(j).squaredNorm();
    return d;
  }

  // probability mass within `width` of either grid edge
  double edge_mass(double width = 2.0) const {
    double m = 0.0;
    for (int j = 0; j < n_points(); ++j) {
      const double x = x_at(j);
      if (x < x_min + width || x > x_max - width) {
        m += components.col(j).squaredNorm() * dx();
      }
    }
    return m;
  }
};

inline SpinorField gaussian_packet(double x0, double k0, double width,
                                   const VectorXcd& spinor, int n_points = 2048,
                                   double x_min = -30.0, double x_max = 30.0) {
  SpinorField f;
  f.x_min = x_min;
  f.x_max = x_max;
  f.components.resize(spinor.size(), n_points);
  for (int j = 0; j < n_points; ++j) {
    const double x = f.x_at(j);
    const complexd env = std::exp(complexd(-(x - x0) * (x - x0) / (2.0 * width * width),
                                           k0 * x));
    f.components.col(j) = spinor * env;
  }
  f.validate();
  f.normalize();
  return f;
}

namespace detail {

// in-place iterative radix-2 FFT; sign = -1 forward, +1 inverse (unnormalized)
inline void fft(std::vector<complexd>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    const complexd wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      complexd w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const complexd u = a[i + k];
        const complexd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

inline double momentum_at(int j, int n, double length) {
  const int half = n / 2;
  const int idx = j <= half ? j : j - n;
  return 2.0 * M_PI * idx / length;
}

// applies a per-mode spinor matrix in momentum space
template <class MatrixAt>
void apply_spectral(SpinorField& f, const MatrixAt& matrix_at) {
  const int n = f.n_points();
  const int nc = f.n_components();
  const double length = f.x_max - f.x_min;
  std::vector<std::vector<complexd>> rows(nc, std::vector<complexd>(n));
  for (int c = 0; c < nc; ++c) {
    for (int j = 0; j < n; ++j) rows[c][j] = f.components(c, j);
    fft(rows[c], -1);
  }
  VectorXcd v(nc);
  for (int j = 0; j < n; ++j) {
    const double k = momentum_at(j, n, length);
    for (int c = 0; c < nc; ++c) v(c) = rows[c][j];
    v = matrix_at(k) * v;
    for (int c = 0; c < nc; ++c) rows[c][j] = v(c);
  }
  for (int c = 0; c < nc; ++c) {
    fft(rows[c], +1);
    for (int j = 0; j < n; ++j) f.components(c, j) = rows[c][j] / double(n);
  }
}

// exp(-i H dt) for small Hermitian H
inline MatrixXcd herm_exp(const MatrixXcd& h, double dt) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  VectorXcd ph(h.rows());
  for (long i = 0; i < h.rows(); ++i) {
    ph(i) = std::exp(-I1 * es.eigenvalues()(i) * dt);
  }
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace detail

// Strang-split evolution of the 1+1 Dirac or Majorana equation
//   Dirac:    i dpsi/dt = -i sx psi' + (m sz + V(x)) psi
//   Majorana: i dpsi/dt = -i sx psi' - i m sy psi* + V(x) psi
// with V = f1 + f2 sz + f3 sy + f4 sx. The kinetic half-steps are spectral;
// the mass+potential step is an exact pointwise rotation (executed in the
// doubled real representation for the Majorana mass).
inline SpinorField evolve_grid(EquationKind kind, double m, const PotentialSpec& pot,
                               SpinorField field, double t) {
  field.validate();
  if (field.n_components() != 2) {
    throw std::invalid_argument("evolve_grid: two-component field expected");
  }
  if (t < 0.0) throw std::invalid_argument("evolve_grid: negative time");
  if (t == 0.0) return field;
  const double dt = field.step();
  const int steps = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12)));
  const double h = t / steps;
  const int n = field.n_points();

  // pointwise step matrices, cached once
  std::vector<Eigen::Matrix<complexd, Eigen::Dynamic, Eigen::Dynamic>> point_step(n);
  const Matrix2cd sx = pauli(1), sy = pauli(2), sz = pauli(3), id = pauli(0);
  for (int j = 0; j < n; ++j) {
    const double x = field.x_at(j);
    const Matrix2cd v = pot.eval(1, x) * id + pot.eval(2, x) * sz +
                        pot.eval(3, x) * sy + pot.eval(4, x) * sx;
    if (kind == EquationKind::Dirac) {
      point_step[j] = detail::herm_exp(m * sz + v, h);
    } else {
      const MatrixXcd m2 = doubled_hamiltonian(MatrixXcd(v), MatrixXcd(-m * sy));
      point_step[j] = detail::herm_exp(m2, h);
    }
  }

  auto kinetic_half = [&](double kval) {
    // exp(-i sx k h/2)
    const double a = kval * h / 2.0;
    Matrix2cd r;
    r << std::cos(a), -I1 * std::sin(a), -I1 * std::sin(a), std::cos(a);
    return r;
  };

  for (int s = 0; s < steps; ++s) {
    detail::apply_spectral(field, kinetic_half);
    if (kind == EquationKind::Dirac) {
      for (int j = 0; j < n; ++j) {
        field.components.col(j) =
            point_step[j].topLeftCorner<2, 2>() * field.components.col(j);
      }
    } else {
      for (int j = 0; j < n; ++j) {
        Eigen::Vector4cd big;
        big << field.components(0, j).real(), field.components(1, j).real(),
            field.components(0, j).imag(), field.components(1, j).imag();
        big = point_step[j] * big;
        field.components(0, j) = big(0) + I1 * big(2);
        field.components(1, j) = big(1) + I1 * big(3);
      }
    }
    detail::apply_spectral(field, kinetic_half);
  }
  return field;
}

// <sigma_x p> with the spectral momentum operator
inline double pseudo_helicity(const SpinorField& field) {
  SpinorField f = field;
  const double length = f.x_max - f.x_min;
  const int n = f.n_points();
  std::vector<std::vector<complexd>> rows(2, std::vector<complexd>(n));
  for (int c = 0; c < 2; ++c) {
    for (int j = 0; j < n; ++j) rows[c][j] = f.components(c, j);
    detail::fft(rows[c], -1);
  }
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double k = detail::momentum_at(j, n, length);
    // psi^dag sigma_x psi at mode j
    const complexd a = rows[0][j], b = rows[1][j];
    acc += k * 2.0 * (std::conj(a) * b).real();
  }
  const double dxn = f.dx() / n;
  double norm = 0.0;
  for (int j = 0; j < n; ++j) {
    norm += std::norm(rows[0][j]) + std::norm(rows[1][j]);
  }
  return acc / norm;
}

// Applies V_T (or V_C, V_K) to a grid field through the pointwise doubled
// representation; for III.b these act as psi -> sz psi* (T), -sx psi* (C),
// psi* (K).
inline SpinorField apply_symmetry(SymmetryKind kind, SpinorField field) {
  const Matrix2cd sx = pauli(1), sz = pauli(3);
  for (int j = 0; j < field.n_points(); ++j) {
    Vector2cd v = field.components.col(j).conjugate();
    switch (kind) {
      case SymmetryKind::K: break;
      case SymmetryKind::C: v = (-sx * v).eval(); break;
      case SymmetryKind::T: v = (sz * v).eval(); break;
    }
    field.components.col(j) = v;
  }
  return field;
}

// ---------------------------------------------------------------------------
// Potential-removal phase transforms (one particle)
// ---------------------------------------------------------------------------

enum class TransformClass { Exact, ApproximateWhereSmall, Unsupported };

struct PhaseTransform {
  TransformClass classification = TransformClass::Unsupported;
  EquationKind kind = EquationKind::Majorana;
  std::string reason;
  // cumulative exponents on the grid; F1, F4 real; F2, F3 imaginary
  VectorXcd F1, F2, F3, F4;
  double x_min = 0.0, dx = 0.0;
  int n = 0;

  // pointwise transform matrix T(x): psi = T phi
  Matrix2cd matrix_at(int j) const {
    const Matrix2cd sx = pauli(1), sy = pauli(2), sz = pauli(3);
    auto expm = [](const Matrix2cd& g) -> Matrix2cd {
      Eigen::ComplexEigenSolver<Matrix2cd> es(g);
      Matrix2cd d = Matrix2cd::Zero();
      d(0, 0) = std::exp(es.eigenvalues()(0));
      d(1, 1) = std::exp(es.eigenvalues()(1));
      return es.eigenvectors() * d * es.eigenvectors().inverse();
    };
    Matrix2cd out = Matrix2cd::Identity();
    if (F1(j) != 0.0) out = out * expm((-I1 * F1(j)) * sx);
    if (F2(j) != 0.0) out = out * expm((-I1 * F2(j)) * sy);
    if (F3(j) != 0.0) out = out * expm((-I1 * F3(j)) * sz);
    if (F4(j) != 0.0) out = out * (std::exp(-I1 * F4(j)) * Matrix2cd::Identity());
    return out;
  }
};

// Cumulative integrals of (f1, -i f2, +i f3, f4) from x = 0, classified by
// equation type. A Dirac potential with f1 or f3 present cannot be removed,
// not even approximately.
inline PhaseTransform build_phase_transform(const PotentialSpec& pot,
                                            EquationKind kind,
                                            const SpinorField& grid_ref,
                                            double mass = 0.0) {
  grid_ref.validate();
  PhaseTransform tr;
  tr.kind = kind;
  tr.n = grid_ref.n_points();
  tr.x_min = grid_ref.x_min;
  tr.dx = grid_ref.dx();

  if (kind == EquationKind::Dirac && (pot.has(1) || pot.has(3))) {
    tr.classification = TransformClass::Unsupported;
    tr.reason = "Dirac potentials with f1 or f3 cannot be removed";
    return tr;
  }

  const int n = tr.n;
  tr.F1 = VectorXcd::Zero(n);
  tr.F2 = VectorXcd::Zero(n);
  tr.F3 = VectorXcd::Zero(n);
  tr.F4 = VectorXcd::Zero(n);
  // cumulative trapezoid integrals anchored at x = 0
  auto accumulate = [&](int which, complexd weight, VectorXcd& out) {
    if (!pot.has(which)) return;
    // index of the grid point closest to x = 0
    int j0 = static_cast<int>(std::round(-tr.x_min / tr.dx));
    j0 = std::clamp(j0, 0, n - 1);
    out(j0) = 0.0;
    for (int j = j0 + 1; j < n; ++j) {
      const double a = pot.eval(which, grid_ref.x_at(j - 1));
      const double b = pot.eval(which, grid_ref.x_at(j));
      out(j) = out(j - 1) + weight * 0.5 * (a + b) * tr.dx;
    }
    for (int j = j0 - 1; j >= 0; --j) {
      const double a = pot.eval(which, grid_ref.x_at(j + 1));
      const double b = pot.eval(which, grid_ref.x_at(j));
      out(j) = out(j + 1) - weight * 0.5 * (a + b) * tr.dx;
    }
  };
  accumulate(1, 1.0, tr.F1);
  accumulate(2, -I1, tr.F2);
  accumulate(3, I1, tr.F3);
  accumulate(4, 1.0, tr.F4);

  if (kind == EquationKind::Majorana) {
    const bool exact = !pot.has(2) && !pot.has(3) && (!pot.has(4) || mass == 0.0);
    tr.classification =
        exact ? TransformClass::Exact : TransformClass::ApproximateWhereSmall;
    tr.reason = exact ? "real sigma_x exponent only"
                      : "imaginary exponents present; valid where they are small";
  } else {
    const bool exact = !pot.has(2);
    tr.classification =
        exact ? TransformClass::Exact : TransformClass::ApproximateWhereSmall;
    tr.reason = exact ? "scalar phase only"
                      : "imaginary sigma_y exponent; valid where F2 is small";
  }
  return tr;
}

struct TransformErrors {
  double l2_error = 0.0;
  double density_error = 0.0;   // L2 norm of the density difference
  double density_scale = 0.0;   // L2 norm of the direct density on the region
};

// Evolves psi directly under the potential and phi = T^{-1} psi under the
// free equation, then compares psi with T phi. An optional mask restricts
// the comparison region (for ApproximateWhereSmall cases).
inline TransformErrors verify_transform_equivalence(
    const PotentialSpec& pot, EquationKind kind, const SpinorField& psi0, double t,
    double mass, const std::function<bool(double)>& region = {}) {
  const PhaseTransform tr = build_phase_transform(pot, kind, psi0, mass);
  if (tr.classification == TransformClass::Unsupported) {
    throw std::invalid_argument("verify_transform_equivalence: " + tr.reason);
  }
  const SpinorField direct = evolve_grid(kind, mass, pot, psi0, t);

  SpinorField phi = psi0;
  for (int j = 0; j < phi.n_points(); ++j) {
    phi.components.col(j) =
        tr.matrix_at(j).inverse() * phi.components.col(j);
  }
  SpinorField free_evolved =
      evolve_grid(kind, mass, PotentialSpec::free_potential(), phi, t);
  for (int j = 0; j < free_evolved.n_points(); ++j) {
    free_evolved.components.col(j) =
        tr.matrix_at(j) * free_evolved.components.col(j);
  }

  TransformErrors err;
  double l2 = 0.0, dens = 0.0, scale = 0.0;
  for (int j = 0; j < direct.n_points(); ++j) {
    const double x = direct.x_at(j);
    if (region && !region(x)) continue;
    l2 += (direct.components.col(j) - free_evolved.components.col(j)).squaredNorm() *
          direct.dx();
    const double d_direct = direct.components.col(j).squaredNorm();
    const double dd = d_direct - free_evolved.components.col(j).squaredNorm();
    dens += dd * dd * direct.dx();
    scale += d_direct * d_direct * direct.dx();
  }
  err.l2_error = std::sqrt(l2);
  err.density_error = std::sqrt(dens);
  err.density_scale = std::sqrt(scale);
  return err;
}

// ---------------------------------------------------------------------------
// Two-body oscillator equations in the relative coordinate
// ---------------------------------------------------------------------------

namespace detail {

inline Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace detail

// i dpsi/dt = -(i/sqrt2)(a1 - a2)(psi' + m w x b12 psi) + (b1 + b2) m psi
// and the Majorana variant with -i (b1h + b2h) m psi* in place of the Dirac
// mass. Four internal components on the relative-coordinate grid.
inline SpinorField two_body_evolve(EquationKind kind, double m, double omega,
                                   SpinorField field, double t) {
  field.validate();
  if (field.n_components() != 4) {
    throw std::invalid_argument("two_body_evolve: four-component field expected");
  }
  if (t <= 0.0) return field;
  const double dt = field.step();
  const int steps = std::max(1, static_cast<int>(std::ceil(t / dt - 1e-12)));
  const double h = t / steps;
  const int n = field.n_points();
  const double length = field.x_max - field.x_min;

  const Matrix4cd a1 = detail::kron2(pauli(1), pauli(0));
  const Matrix4cd a2 = detail::kron2(pauli(0), pauli(1));
  const Matrix4cd b1 = detail::kron2(pauli(3), pauli(0));
  const Matrix4cd b2 = detail::kron2(pauli(0), pauli(3));
  const Matrix4cd b12 = detail::kron2(pauli(2), pauli(2));
  const Matrix4cd b1h = detail::kron2(pauli(2), pauli(0));
  const Matrix4cd b2h = detail::kron2(pauli(0), pauli(2));
  const Matrix4cd adiff = (a1 - a2) / std::sqrt(2.0);

  // pointwise generators: A(x) = -(i) m w x adiff b12 [+ (b1+b2) m for Dirac]
  std::vector<MatrixXcd> point_step(n);
  for (int j = 0; j < n; ++j) {
    const double x = field.x_at(j);
    const Matrix4cd osc = -I1 * m * omega * x * (adiff * b12);
    if (kind == EquationKind::Dirac) {
      point_step[j] = detail::herm_exp(osc + m * (b1 + b2), h);
    } else {
      const MatrixXcd m2 =
          doubled_hamiltonian(MatrixXcd(osc), MatrixXcd(-m * (b1h + b2h)));
      point_step[j] = detail::herm_exp(m2, h);
    }
  }

  // kinetic: exp(-i adiff k h/2), diagonalized once per mode and cached
  std::vector<Matrix4cd> kin(n);
  {
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(adiff);
    for (int j = 0; j < n; ++j) {
      const double k = detail::momentum_at(j, n, length);
      Eigen::Vector4cd ph;
      for (int i = 0; i < 4; ++i) {
        ph(i) = std::exp(-I1 * es.eigenvalues()(i) * k * h / 2.0);
      }
      kin[j] = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    }
  }

  auto kinetic_half = [&](SpinorField& f) {
    std::vector<std::vector<complexd>> rows(4, std::vector<complexd>(n));
    for (int c = 0; c < 4; ++c) {
      for (int j = 0; j < n; ++j) rows[c][j] = f.components(c, j);
      detail::fft(rows[c], -1);
    }
    Eigen::Vector4cd v;
    for (int j = 0; j < n; ++j) {
      for (int c = 0; c < 4; ++c) v(c) = rows[c][j];
      v = (kin[j] * v).eval();
      for (int c = 0; c < 4; ++c) rows[c][j] = v(c);
    }
    for (int c = 0; c < 4; ++c) {
      detail::fft(rows[c], +1);
      for (int j = 0; j < n; ++j) f.components(c, j) = rows[c][j] / double(n);
    }
  };

  for (int s = 0; s < steps; ++s) {
    kinetic_half(field);
    if (kind == EquationKind::Dirac) {
      for (int j = 0; j < n; ++j) {
        field.components.col(j) =
            (point_step[j].topLeftCorner<4, 4>() * field.components.col(j)).eval();
      }
    } else {
      for (int j = 0; j < n; ++j) {
        Eigen::Matrix<complexd, 8, 1> big;
        for (int c = 0; c < 4; ++c) {
          big(c) = field.components(c, j).real();
          big(c + 4) = field.components(c, j).imag();
        }
        big = (point_step[j] * big).eval();
        for (int c = 0; c < 4; ++c) {
          field.components(c, j) = big(c) + I1 * big(c + 4);
        }
      }
    }
    kinetic_half(field);
  }
  return field;
}

// pointwise transform exp(-m w x^2 b12 / 2) for the two-body oscillator
inline Matrix4cd two_body_transform_matrix(double m, double omega, double x) {
  const Matrix4cd b12 = detail::kron2(pauli(2), pauli(2));
  // b12 is an involution: exp(s b12) = cosh(s) + sinh(s) b12
  const double s = -0.5 * m * omega * x * x;
  return std::cosh(s) * Matrix4cd::Identity() + std::sinh(s) * b12;
}

// ---------------------------------------------------------------------------
// Mixed-state inequivalence (the sigma_y example)
// ---------------------------------------------------------------------------

// von Neumann entropy of rho(t) = p |psi(t)><psi(t)| + (1-p)|phi(t)><phi(t)|
// with psi0 = (1,0), phi0 = e^{i phi} psi0, both evolved member-wise under
// M = i sigma_y K. Reports non-physical spectra instead of clipping.
inline double majorana_mixture_entropy(double p, double phi, double t) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("majorana_mixture_entropy: p in [0,1]");
  }
  MajoranaOperator op;
  op.a_part = MatrixXcd::Zero(2, 2);
  op.b_part = pauli(2);
  VectorXcd psi0(2), phi0(2);
  psi0 << 1.0, 0.0;
  phi0 = std::exp(I1 * phi) * psi0;
  const VectorXcd psi = evolve_majorana_finite(op, psi0, t);
  const VectorXcd ph = evolve_majorana_finite(op, phi0, t);
  const MatrixXcd rho =
      p * (psi * psi.adjoint()) + (1.0 - p) * (ph * ph.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw std::runtime_error(
        "majorana_mixture_entropy: non-physical mixed state (eigenvalue < -1e-9)");
  }
  return qinfo::vn_entropy(qinfo::DensityMatrix(rho, {2}));
}

// ---------------------------------------------------------------------------
// 1+1 Clifford representation table
// ---------------------------------------------------------------------------

struct RepresentationEntry {
  std::string label;
  Matrix2cd beta;
  Matrix2cd gamma1;
  Matrix2cd alpha;
  int mass_sign;  // H = alpha p + mass_sign * i m sigma_y K
};

inline std::vector<RepresentationEntry> representation_table() {
  std::vector<RepresentationEntry> t;
  auto entry = [&](const std::string& label, int b, const complexd& g1c, int g1,
                   int mass_sign) {
    RepresentationEntry e;
    e.label = label;
    e.beta = pauli(b);
    e.gamma1 = g1c * pauli(g1);
    e.alpha = e.beta * e.gamma1;
    e.mass_sign = mass_sign;
    t.push_back(e);
  };
  entry("I.a", 1, I1, 2, -1);
  entry("I.b", 1, I1, 3, -1);
  entry("II.a", 2, I1, 1, +1);
  entry("II.b", 2, I1, 3, +1);
  entry("III.a", 3, I1, 1, -1);
  entry("III.b", 3, I1, 2, -1);
  return t;
}

}  // namespace lcq::majorana
