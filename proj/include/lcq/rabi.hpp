// Truncated Rabi model: exact diagonalization, ground-state self-excitation,
// and the slow anti-Zeno repeated-measurement protocol with weak
// measurements and randomized schedules.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lcq::rabi {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using complexd = std::complex<double>;

struct RabiParams {
  double omega;    // cavity frequency
  double omega0;   // qubit splitting
  double g;        // coupling strength
  int n_max = 30;  // Fock truncation

  void validate() const {
    if (!(omega > 0.0) || !(omega0 > 0.0)) {
      throw std::invalid_argument("RabiParams: frequencies must be > 0");
    }
    if (g < 0.0) throw std::invalid_argument("RabiParams: coupling must be >= 0");
    if (n_max < 4) throw std::invalid_argument("RabiParams: n_max >= 4 required");
  }
};

struct MeasurementSchedule {
  double T1;
  double T2 = 0.0;  // defaults to sqrt(2) T1 when <= 0
  int N = 8;
  double jitter_halfwidth = 0.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (!(T1 > 0.0)) throw std::invalid_argument("MeasurementSchedule: T1 > 0");
    if (N < 1) throw std::invalid_argument("MeasurementSchedule: N >= 1");
    if (jitter_halfwidth < 0.0) {
      throw std::invalid_argument("MeasurementSchedule: jitter >= 0");
    }
  }

  double period2() const { return T2 > 0.0 ? T2 : std::sqrt(2.0) * T1; }

  // t_n in {T1, T1+T2, 2T1+T2, 2T1+2T2, ...}
  std::vector<double> nominal_times() const {
    std::vector<double> out;
    double t = 0.0;
    for (int n = 0; n < N; ++n) {
      t += (n % 2 == 0) ? T1 : period2();
      out.push_back(t);
    }
    return out;
  }
};

struct WeakMeasurement {
  double epsilon = 0.0;  // probability that the detector does nothing

  void validate() const {
    if (epsilon < 0.0 || epsilon > 1.0) {
      throw std::invalid_argument("WeakMeasurement: epsilon in [0,1]");
    }
  }
};

namespace detail {

// counter-based deterministic generator for reproducible jitter
inline double uniform_pm1(std::uint64_t seed, std::uint64_t run, std::uint64_t step) {
  std::uint64_t x = seed * 0x9e3779b97f4a7c15ull + run * 0xbf58476d1ce4e5b9ull +
                    step * 0x94d049bb133111ebull + 0x2545f4914f6cdd1dull;
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  const double u = static_cast<double>(x >> 11) * 0x1.0p-53;  // [0,1)
  return 2.0 * u - 1.0;
}

}  // namespace detail

// Qubit (x) Fock product basis, index = s (n_max+1) + n with s = 0 for |g>,
// s = 1 for |e>. The Hamiltonian is real symmetric in this basis.
class RabiModel {
 public:
  explicit RabiModel(const RabiParams& p) : params_(p) {
    p.validate();
    const int nf = p.n_max + 1;
    const int dim = 2 * nf;
    MatrixXd h = MatrixXd::Zero(dim, dim);
    for (int s = 0; s < 2; ++s) {
      for (int n = 0; n < nf; ++n) {
        const int i = s * nf + n;
        h(i, i) = p.omega * n + 0.5 * p.omega0 * (s == 1 ? 1.0 : -1.0);
        // g sigma_x (a + a^dag)
        const int so = (1 - s) * nf;
        if (n + 1 < nf) {
          h(so + n + 1, i) += p.g * std::sqrt(n + 1.0);
          h(i, so + n + 1) += p.g * std::sqrt(n + 1.0);
        }
      }
    }
    h = 0.5 * (h + h.transpose().eval());
    solver_.compute(h);
    if (solver_.info() != Eigen::Success) {
      throw std::runtime_error("RabiModel: diagonalization failed");
    }
    hamiltonian_ = h;
  }

  const RabiParams& params() const { return params_; }
  int dim() const { return 2 * (params_.n_max + 1); }
  int fock_dim() const { return params_.n_max + 1; }
  const MatrixXd& hamiltonian() const { return hamiltonian_; }
  const VectorXd& eigenvalues() const { return solver_.eigenvalues(); }
  const MatrixXd& eigenvectors() const { return solver_.eigenvectors(); }

  // Normalized lowest eigenvector with the |g,0> coefficient made positive.
  // Rejects non-convergent truncations (population in the top Fock levels).
  VectorXd ground_state() const {
    VectorXd v = solver_.eigenvectors().col(0);
    const int nf = fock_dim();
    if (v(0) < 0.0) v = -v;
    double top = 0.0;
    for (int s = 0; s < 2; ++s) {
      top += v(s * nf + nf - 1) * v(s * nf + nf - 1);
      top += v(s * nf + nf - 2) * v(s * nf + nf - 2);
    }
    if (top > 1e-8) {
      throw std::runtime_error("RabiModel: Fock truncation not converged");
    }
    return v;
  }

  double ground_energy() const { return solver_.eigenvalues()(0); }

  // <|e><e| (x) 1>
  double excitation_probability(const VectorXd& state) const {
    const int nf = fock_dim();
    double pe = 0.0;
    for (int n = 0; n < nf; ++n) pe += state(nf + n) * state(nf + n);
    return pe / state.squaredNorm();
  }

  double excitation_probability(const MatrixXcd& rho) const {
    const int nf = fock_dim();
    double pe = 0.0;
    for (int n = 0; n < nf; ++n) pe += rho(nf + n, nf + n).real();
    return pe / rho.trace().real();
  }

  // (1 - P_e)|state>, normalized; the qubit ends strictly in |g>.
  VectorXd project_no_click(const VectorXd& state) const {
    const int nf = fock_dim();
    VectorXd out = state;
    for (int n = 0; n < nf; ++n) out(nf + n) = 0.0;
    const double norm = out.norm();
    if (!(norm > 1e-14)) {
      throw std::runtime_error("project_no_click: vanishing no-click amplitude");
    }
    return out / norm;
  }

  MatrixXcd evolve(const MatrixXcd& rho, double t) const {
    const MatrixXd& v = solver_.eigenvectors();
    const VectorXd& e = solver_.eigenvalues();
    Eigen::VectorXcd phases(dim());
    for (int i = 0; i < dim(); ++i) phases(i) = std::exp(complexd(0.0, -e(i) * t));
    const MatrixXcd in_eigen = v.transpose() * rho * v;
    const MatrixXcd evolved =
        phases.asDiagonal() * in_eigen * phases.conjugate().asDiagonal();
    return v * evolved * v.transpose();
  }

  Eigen::VectorXcd evolve(const Eigen::VectorXcd& psi, double t) const {
    const MatrixXd& v = solver_.eigenvectors();
    const VectorXd& e = solver_.eigenvalues();
    Eigen::VectorXcd c = v.transpose() * psi;
    for (int i = 0; i < dim(); ++i) c(i) *= std::exp(complexd(0.0, -e(i) * t));
    return v * c;
  }

 private:
  RabiParams params_;
  MatrixXd hamiltonian_;
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver_;
};

inline VectorXd ground_state(const RabiParams& p) { return RabiModel(p).ground_state(); }

inline double excitation_probability(const RabiParams& p, const VectorXd& state) {
  return RabiModel(p).excitation_probability(state);
}

struct SurvivalPoint {
  double t = 0.0;     // measurement time
  double p_ng = 0.0;  // single-step no-click probability (run-averaged)
  double P_g = 0.0;   // accumulated survival (run-averaged)
};

struct SurvivalTrace {
  std::vector<SurvivalPoint> points;
  double g_over_omega = 0.0;
};

// Repeated measurements on the Rabi ground state. Evolution between
// measurements is exact (spectral); the detector acts through the
// completely positive map rho' = (1-eps)(1-P_e) rho (1-P_e) + eps rho,
// conditioned on no click. Deterministic for a fixed seed.
inline SurvivalTrace run_protocol(const RabiParams& params,
                                  const MeasurementSchedule& schedule,
                                  const WeakMeasurement& weak, int n_runs = 1) {
  params.validate();
  schedule.validate();
  weak.validate();
  if (n_runs < 1) throw std::invalid_argument("run_protocol: n_runs >= 1");
  const RabiModel model(params);
  const VectorXd g0 = model.ground_state();
  const int nf = model.fock_dim();
  const auto nominal = schedule.nominal_times();

  SurvivalTrace trace;
  trace.g_over_omega = params.g / params.omega;
  trace.points.assign(nominal.size(), SurvivalPoint{});

  for (int run = 0; run < n_runs; ++run) {
    MatrixXcd rho = (g0 * g0.transpose()).cast<complexd>();
    double survival = 1.0;
    double t_prev = 0.0;
    for (std::size_t step = 0; step < nominal.size(); ++step) {
      double t_n = nominal[step];
      if (schedule.jitter_halfwidth > 0.0) {
        t_n += schedule.jitter_halfwidth *
               detail::uniform_pm1(schedule.seed, run, step);
      }
      const double dt = t_n - t_prev;
      if (dt > 0.0) rho = model.evolve(rho, dt);
      t_prev = t_n;

      const double pe = model.excitation_probability(rho);
      const double p_ng = 1.0 - (1.0 - weak.epsilon) * pe;
      // no-click update
      MatrixXcd projected = rho;
      for (int n = 0; n < nf; ++n) {
        for (int i = 0; i < model.dim(); ++i) {
          projected(nf + n, i) = 0.0;
          projected(i, nf + n) = 0.0;
        }
      }
      rho = ((1.0 - weak.epsilon) * projected + weak.epsilon * rho) / p_ng;
      survival *= p_ng;

      trace.points[step].t += t_n / n_runs;
      trace.points[step].p_ng += p_ng / n_runs;
      trace.points[step].P_g += survival / n_runs;
    }
  }
  return trace;
}

// Crudest truncation: after every measurement the system is back in |G>,
// giving the exactly exponential law |c_0|^(2N+2).
inline double truncated_model_survival(const RabiParams& params, int N) {
  if (N < 0) throw std::invalid_argument("truncated_model_survival: N >= 0");
  const VectorXd g0 = ground_state(params);
  const double c0sq = g0(0) * g0(0);
  return std::pow(c0sq, N + 1);
}

struct ExponentialFit {
  double chi_bar = 0.0;    // slope of -ln P_g vs N in units of (g/omega)^2
  double r_squared = 0.0;  // quality of the linear fit of ln P_g vs N
  double slope = 0.0;      // raw slope of ln P_g vs N
};

inline ExponentialFit fit_exponential(const SurvivalTrace& trace) {
  if (trace.points.size() < 4) {
    throw std::invalid_argument("fit_exponential: need at least 4 points");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    const double p = trace.points[i].P_g;
    if (!(p > 0.0) || p > 1.0 + 1e-12) {
      throw std::invalid_argument("fit_exponential: survival outside (0,1]");
    }
    xs.push_back(static_cast<double>(i + 1));
    ys.push_back(std::log(p));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double fit = intercept + slope * xs[i];
    ss_res += (ys[i] - fit) * (ys[i] - fit);
    ss_tot += (ys[i] - mean) * (ys[i] - mean);
  }
  ExponentialFit out;
  out.slope = slope;
  const double gw2 = trace.g_over_omega * trace.g_over_omega;
  out.chi_bar = gw2 > 0.0 ? -slope / gw2 : 0.0;
  out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return out;
}

}  // namespace lcq::rabi
