// Scenario runner: maps named experiments to parameter presets, executes
// sweeps on a worker pool, and emits plot-ready CSV plus a reproducible
// run manifest.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lcq/atom_qed.hpp"
#include "lcq/circuit_qed.hpp"
#include "lcq/majorana.hpp"
#include "lcq/qinfo.hpp"
#include "lcq/rabi.hpp"

namespace lcq::scenarios {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ParamMap = std::map<std::string, std::string>;

struct ScenarioConfig {
  std::string scenario;
  ParamMap params;
  std::string output_path = "out.csv";
  std::uint64_t seed = 1;
};

struct ScenarioInfo {
  std::string name;
  std::string anchor;  // which figure the default preset reproduces
  ParamMap defaults;
};

namespace detail {

inline double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter '" + key + "' is not a number: '" + value + "'");
  }
}

inline long to_long(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter '" + key + "' is not an integer: '" + value + "'");
  }
}

inline std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

class Params {
 public:
  Params(const ParamMap& defaults, const ParamMap& overrides) : values_(defaults) {
    for (const auto& [k, v] : overrides) {
      if (values_.find(k) == values_.end()) {
        throw ConfigError("unknown parameter '" + k + "'");
      }
      values_[k] = v;
    }
  }
  double real(const std::string& k) const { return to_double(k, at(k)); }
  long integer(const std::string& k) const { return to_long(k, at(k)); }
  std::vector<double> list(const std::string& k) const { return to_list(k, at(k)); }
  const ParamMap& map() const { return values_; }

 private:
  const std::string& at(const std::string& k) const {
    auto it = values_.find(k);
    if (it == values_.end()) throw ConfigError("missing parameter '" + k + "'");
    return it->second;
  }
  ParamMap values_;
};

inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.14e", v);
  return buf;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// evaluates f on [0, n) across a small worker pool; results land in index
// order regardless of completion order
template <class F>
std::vector<std::vector<double>> parallel_rows(int n, const F& f) {
  std::vector<std::vector<double>> rows(std::max(n, 0));
  if (n <= 0) return rows;
  const int workers =
      std::max(1, std::min<int>(4, static_cast<int>(std::thread::hardware_concurrency())));
  std::exception_ptr error;
  std::mutex error_mutex;
  std::atomic<int> next{0};
  auto body = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        rows[i] = f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

inline std::vector<double> linspace(double a, double b, long steps) {
  std::vector<double> out;
  if (steps <= 0) return out;
  if (steps == 1) {
    out.push_back(a);
    return out;
  }
  for (long i = 0; i < steps; ++i) {
    out.push_back(a + (b - a) * static_cast<double>(i) / (steps - 1));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// scenario implementations
// ---------------------------------------------------------------------------

namespace detail {

inline atom_qed::AtomPairGeometry atom_geom(double z, double x, double dipole_ratio) {
  atom_qed::AtomPairGeometry g;
  g.z = z;
  g.x = x;
  g.dipole_ratio = dipole_ratio;
  return g;
}

inline Table run_atom_concurrence(const Params& p) {
  const int n = static_cast<int>(p.integer("n"));
  if (n < 0 || n > 2) throw ConfigError("n must be 0, 1 or 2");
  const auto zs = p.list("z_list");
  const auto xs = linspace(p.real("x_min"), p.real("x_max"),
                           p.integer("x_steps"));
  const double dr = p.real("dipole_ratio");
  Table t;
  t.columns.push_back("x");
  for (double z : zs) t.columns.push_back("C" + std::to_string(n) + "_z" + std::to_string(static_cast<long>(z)));
  t.rows = parallel_rows(static_cast<int>(xs.size()), [&](int i) {
    std::vector<double> row{xs[i]};
    for (double z : zs) {
      const auto amps = atom_qed::amplitudes_eg(atom_geom(z, xs[i], dr));
      row.push_back(atom_qed::projected_concurrence(n, amps));
    }
    return row;
  });
  return t;
}

inline Table run_atom_traced(const Params& p) {
  const auto zs = p.list("z_list");
  const auto xs = linspace(p.real("x_min"), p.real("x_max"), p.integer("x_steps"));
  const double dr = p.real("dipole_ratio");
  Table t;
  t.columns.push_back("x");
  for (double z : zs) {
    t.columns.push_back("I_z" + std::to_string(static_cast<long>(z)));
    t.columns.push_back("C_z" + std::to_string(static_cast<long>(z)));
  }
  t.rows = parallel_rows(static_cast<int>(xs.size()), [&](int i) {
    std::vector<double> row{xs[i]};
    for (double z : zs) {
      const auto amps = atom_qed::amplitudes_eg(atom_geom(z, xs[i], dr));
      const auto xs_state = atom_qed::traced_state(amps);
      const auto rho = qinfo::DensityMatrix(xs_state.embed(), {2, 2});
      row.push_back(qinfo::mutual_information(rho));
      row.push_back(qinfo::concurrence_xstate(xs_state));
    }
    return row;
  });
  return t;
}

inline Table run_bell_swap(const Params& p) {
  const auto zs = p.list("z_list");
  const auto xs = linspace(p.real("x_min"), p.real("x_max"), p.integer("x_steps"));
  Table t;
  t.columns.push_back("x");
  for (double z : zs) t.columns.push_back("C_z" + std::to_string(static_cast<long>(z)));
  t.rows = parallel_rows(static_cast<int>(xs.size()), [&](int i) {
    std::vector<double> row{xs[i]};
    for (double z : zs) row.push_back(atom_qed::bell_swap_concurrence(z, z / xs[i]));
    return row;
  });
  return t;
}

inline Table run_esd_cycle(const Params& p) {
  const double z = p.real("z");
  const double mix = p.real("p");
  const double dr = p.real("dipole_ratio");
  const auto xs = linspace(p.real("x_min"), p.real("x_max"), p.integer("x_steps"));
  Table t;
  t.columns = {"x", "C_AB", "N_AF", "C_A_BF", "C_F_AB"};
  t.rows = parallel_rows(static_cast<int>(xs.size()), [&](int i) {
    atom_qed::AtomPairGeometry g = atom_geom(z, xs[i], dr);
    g.delta_m = atom_qed::DipoleOrientation::Averaged;
    std::vector<double> row{xs[i]};
    row.push_back(qinfo::concurrence_xstate(atom_qed::esd_state(mix, g)));
    row.push_back(atom_qed::esd_atom_field(mix, g).negativity);
    const auto bi = atom_qed::esd_bipartitions(mix, g);
    row.push_back(bi.c_atom_rest);
    row.push_back(bi.c_field_rest);
    return row;
  });
  return t;
}

inline Table run_circuit_lightcone(const Params& p) {
  const double rho = p.real("rho");
  const auto mults = p.list("k_multipliers");
  const auto xis = linspace(p.real("xi_min"), p.real("xi_max"), p.integer("xi_steps"));
  Table t;
  t.columns.push_back("xi");
  for (double m : mults) t.columns.push_back("C_K" + std::to_string(static_cast<long>(m)));
  t.rows = parallel_rows(static_cast<int>(xis.size()), [&](int i) {
    std::vector<double> row{xis[i]};
    for (double m : mults) {
      row.push_back(circuit_qed::concurrence_1d(
          {rho, xis[i], m * circuit_qed::k0_baseline}));
    }
    return row;
  });
  return t;
}

inline Table run_fermi_causality(const Params& p) {
  const auto rhos = p.list("rho_list");
  const double k = p.real("K");
  const auto ts = linspace(p.real("t_min"), p.real("t_max"), p.integer("t_steps"));
  Table t;
  t.columns.push_back("vt_over_r");
  for (double r : rhos) {
    std::ostringstream a, b;
    a << "PeB_r_rho" << r;
    b << "PeB_gA_rho" << r;
    t.columns.push_back(a.str());
    t.columns.push_back(b.str());
  }
  t.rows = parallel_rows(static_cast<int>(ts.size()), [&](int i) {
    std::vector<double> row{ts[i]};
    for (double r : rhos) {
      circuit_qed::FermiConfig cfg;
      cfg.K_A = cfg.K_B = k;
      cfg.rho = r;
      cfg.time_grid = {ts[i]};
      const auto probs = circuit_qed::fermi_probabilities(cfg, ts[i]);
      row.push_back(probs.P_eB_r);
      row.push_back(probs.P_eB_gA);
    }
    return row;
  });
  return t;
}

inline Table run_conditioned_click(const Params& p) {
  const auto ks = p.list("K_list");
  const double rho = p.real("rho");
  const auto ts = linspace(p.real("omega_t_min"), p.real("omega_t_max"),
                           p.integer("t_steps"));
  Table t;
  t.columns.push_back("Omega_t");
  for (double k : ks) {
    std::ostringstream name;
    name << "P_gA_eB_K" << k;
    t.columns.push_back(name.str());
  }
  t.rows = parallel_rows(static_cast<int>(ts.size()), [&](int i) {
    std::vector<double> row{ts[i]};
    for (double k : ks) {
      circuit_qed::FermiConfig cfg;
      cfg.K_A = cfg.K_B = k;
      cfg.rho = rho;
      cfg.time_grid = {ts[i] / rho};
      row.push_back(circuit_qed::conditioned_probability(cfg, ts[i] / rho));
    }
    return row;
  });
  return t;
}

inline Table run_rabi_ground(const Params& p) {
  const auto gs = linspace(p.real("g_over_omega_min"), p.real("g_over_omega_max"),
                           p.integer("g_over_omega_steps"));
  const double omega = p.real("omega");
  const long n_max = p.integer("n_max");
  Table t;
  t.columns = {"g_over_omega", "p_e"};
  t.rows = parallel_rows(static_cast<int>(gs.size()), [&](int i) {
    rabi::RabiParams rp{omega, omega, gs[i] * omega, static_cast<int>(n_max)};
    const rabi::RabiModel model(rp);
    return std::vector<double>{
        gs[i], model.excitation_probability(model.ground_state())};
  });
  return t;
}

inline Table run_antizeno(const Params& p, std::uint64_t seed) {
  const double omega = p.real("omega");
  const double g_over_omega = p.real("g_over_omega");
  const double wt1 = p.real("omega_T1");
  const long n_meas = p.integer("n_measurements");
  const double jitter = p.real("jitter");
  const long n_runs = p.integer("n_runs");
  const auto eps = p.list("epsilon_list");
  rabi::RabiParams rp{omega, omega, g_over_omega * omega,
                      static_cast<int>(p.integer("n_max"))};
  Table t;
  t.columns.push_back("omega_t");
  for (double e : eps) {
    std::ostringstream a, b;
    a << "P_g_eps" << e;
    b << "p_ng_eps" << e;
    t.columns.push_back(a.str());
    t.columns.push_back(b.str());
  }
  std::vector<rabi::SurvivalTrace> traces;
  for (double e : eps) {
    rabi::MeasurementSchedule sched{wt1 / omega, 0.0, static_cast<int>(n_meas),
                                    jitter / omega, seed};
    traces.push_back(rabi::run_protocol(rp, sched, rabi::WeakMeasurement{e},
                                        static_cast<int>(n_runs)));
  }
  for (long step = 0; step < n_meas; ++step) {
    std::vector<double> row{traces[0].points[step].t * omega};
    for (std::size_t e = 0; e < eps.size(); ++e) {
      row.push_back(traces[e].points[step].P_g);
      row.push_back(traces[e].points[step].p_ng);
    }
    t.rows.push_back(row);
  }
  return t;
}

inline Table run_majorana_example(const Params& p) {
  const auto ts = linspace(p.real("t_min"), p.real("t_max"), p.integer("t_steps"));
  const double mix = p.real("p");
  const double phase = p.real("phi");
  majorana::MajoranaOperator op;
  op.a_part = Eigen::MatrixXcd::Zero(2, 2);
  op.b_part = majorana::pauli(2);
  Eigen::VectorXcd psi0(2), phi0(2);
  psi0 << 1.0, 0.0;
  phi0 << 0.0, 1.0;
  Table t;
  t.columns = {"t", "sigma2_expectation", "overlap_imag", "mixture_entropy"};
  t.rows = parallel_rows(static_cast<int>(ts.size()), [&](int i) {
    const auto psi = majorana::evolve_majorana_finite(op, psi0, ts[i]);
    const auto ph = majorana::evolve_majorana_finite(op, phi0, ts[i]);
    const double s2 = (psi.adjoint() * majorana::pauli(2) * psi)(0).real();
    const double ov = ph.dot(psi).imag();
    return std::vector<double>{
        ts[i], s2, ov, majorana::majorana_mixture_entropy(mix, phase, ts[i])};
  });
  return t;
}

inline majorana::SpinorField klein_packet(double x0, double k0, double m) {
  Eigen::Matrix2cd h = k0 * majorana::pauli(1) + m * majorana::pauli(3);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(h);
  return majorana::gaussian_packet(x0, k0, 2.0, es.eigenvectors().col(1));
}

inline Table run_klein_scattering(const Params& p) {
  const double m = p.real("m");
  const double k0 = p.real("k0");
  const double x0 = p.real("x0");
  const double t = p.real("t");
  majorana::PotentialSpec pot;
  pot.f1 = [](double x) { return x > 0.0 ? x : 0.0; };
  const auto initial = klein_packet(x0, k0, m);
  const auto dirac =
      majorana::evolve_grid(majorana::EquationKind::Dirac, m, pot, initial, t);
  Eigen::Vector2cd plus;
  plus << 1.0, 1.0;
  const auto maj_init = majorana::gaussian_packet(x0, k0, 2.0, plus.normalized());
  const auto maj =
      majorana::evolve_grid(majorana::EquationKind::Majorana, m, pot, maj_init, t);
  Table tab;
  tab.columns = {"x", "density_initial", "density_dirac", "density_majorana"};
  const auto d0 = initial.density(), d1 = dirac.density(), d2 = maj.density();
  for (int j = 0; j < initial.n_points(); ++j) {
    tab.rows.push_back({initial.x_at(j), d0(j), d1(j), d2(j)});
  }
  return tab;
}

inline Table run_symmetry_replay(const Params& p) {
  const double m = p.real("m");
  const double t_half = p.real("t_half");
  majorana::PotentialSpec pot;
  pot.f1 = [](double x) { return x > 0.0 ? x : 0.0; };
  const auto initial = klein_packet(p.real("x0"), p.real("k0"), m);
  auto mid = majorana::evolve_grid(majorana::EquationKind::Dirac, m, pot, initial,
                                   t_half);
  mid = majorana::apply_symmetry(majorana::SymmetryKind::T, mid);
  const auto back =
      majorana::evolve_grid(majorana::EquationKind::Dirac, m, pot, mid, t_half);
  Table tab;
  tab.columns = {"x", "density_initial", "density_replayed"};
  const auto d0 = initial.density(), d1 = back.density();
  for (int j = 0; j < initial.n_points(); ++j) {
    tab.rows.push_back({initial.x_at(j), d0(j), d1(j)});
  }
  return tab;
}

inline Table run_potential_transform(const Params& p) {
  const double m = p.real("m");
  const double g = p.real("g");
  const double t = p.real("t");
  majorana::PotentialSpec pot;
  pot.f1 = [g](double x) { return g * x; };
  Eigen::Vector2cd sp;
  sp << 1.0, 0.4;
  auto f = majorana::gaussian_packet(p.real("x0"), p.real("k0"), 2.0, sp.normalized());
  f.dt = f.dx() / 32.0;
  const auto tr =
      majorana::build_phase_transform(pot, majorana::EquationKind::Majorana, f, m);
  const auto direct =
      majorana::evolve_grid(majorana::EquationKind::Majorana, m, pot, f, t);
  majorana::SpinorField phi = f;
  for (int j = 0; j < f.n_points(); ++j) {
    phi.components.col(j) = tr.matrix_at(j).inverse() * phi.components.col(j);
  }
  auto freed = majorana::evolve_grid(majorana::EquationKind::Majorana, m, {}, phi, t);
  for (int j = 0; j < f.n_points(); ++j) {
    freed.components.col(j) = tr.matrix_at(j) * freed.components.col(j);
  }
  Table tab;
  tab.columns = {"x", "density_direct", "density_transformed", "density_diff"};
  const auto d0 = direct.density(), d1 = freed.density();
  for (int j = 0; j < f.n_points(); ++j) {
    tab.rows.push_back({f.x_at(j), d0(j), d1(j), d0(j) - d1(j)});
  }
  return tab;
}

inline Table run_two_body_oscillator(const Params& p) {
  const double m = p.real("m");
  const double omega = p.real("omega");
  const double t = p.real("t");
  Eigen::VectorXcd spinor(4);
  spinor << 1.0, 0.3, 0.2, 0.1;
  majorana::SpinorField f;
  f.components.resize(4, 2048);
  const double k0 = p.real("k0");
  for (int j = 0; j < 2048; ++j) {
    const double x = f.x_at(j);
    f.components.col(j) =
        spinor * std::exp(std::complex<double>(-x * x / 8.0, k0 * x));
  }
  f.normalize();
  f.dt = f.dx() / 8.0;
  const auto direct =
      majorana::two_body_evolve(majorana::EquationKind::Majorana, m, omega, f, t);
  majorana::SpinorField phi = f;
  for (int j = 0; j < f.n_points(); ++j) {
    phi.components.col(j) =
        majorana::two_body_transform_matrix(m, omega, f.x_at(j)).inverse() *
        phi.components.col(j);
  }
  auto freed =
      majorana::two_body_evolve(majorana::EquationKind::Majorana, m, 0.0, phi, t);
  for (int j = 0; j < f.n_points(); ++j) {
    freed.components.col(j) =
        majorana::two_body_transform_matrix(m, omega, f.x_at(j)) *
        freed.components.col(j);
  }
  Table tab;
  tab.columns = {"x", "density_direct", "density_quasifree"};
  const auto d0 = direct.density(), d1 = freed.density();
  for (int j = 0; j < f.n_points(); ++j) {
    tab.rows.push_back({f.x_at(j), d0(j), d1(j)});
  }
  return tab;
}

}  // namespace detail

// Stable list of the fourteen scenarios with their figure anchors and the
// presets that reproduce them.
inline const std::vector<ScenarioInfo>& scenario_table() {
  static const std::vector<ScenarioInfo> table = {
      {"atom_concurrence",
       "vacuum-projected concurrence vs x for z = 5, 10, 15 (peak height 1 at the cone)",
       {{"n", "0"},
        {"z_list", "5,10,15"},
        {"x_min", "0.3"},
        {"x_max", "3.0"},
        {"x_steps", "241"},
        {"dipole_ratio", "5e-3"}}},
      {"atom_traced",
       "mutual information and concurrence of the field-traced pair vs x",
       {{"z_list", "5,10,15"},
        {"x_min", "0.05"},
        {"x_max", "3.0"},
        {"x_steps", "160"},
        {"dipole_ratio", "5e-3"}}},
      {"bell_swap",
       "Bell-analyzer swapped concurrence vs x for z = 1, 5, 10",
       {{"z_list", "1,5,10"},
        {"x_min", "0.2"},
        {"x_max", "4.0"},
        {"x_steps", "191"}}},
      {"esd_cycle",
       "entanglement death/revival cycle with atom-field and bipartition measures, p = 0.98, z = 2e7",
       {{"z", "2e7"},
        {"p", "0.98"},
        {"x_min", "1.02"},
        {"x_max", "45.0"},
        {"x_steps", "200"},
        {"dipole_ratio", "5e-3"}}},
      {"circuit_lightcone",
       "two-qubit concurrence across xi = 1 at r = lambda/8 for K/K0 = 1, 10, 100, 1000",
       {{"rho", "0.7853981633974483"},
        {"k_multipliers", "1,10,100,1000"},
        {"xi_min", "0.05"},
        {"xi_max", "2.0"},
        {"xi_steps", "160"}}},
      {"fermi_causality",
       "r-dependent excitation probability and correlation vs vt/r at K = 0.0225 for rho = pi/2, pi, 2pi",
       {{"rho_list", "1.5707963267948966,3.141592653589793,6.283185307179586"},
        {"K", "0.0225"},
        {"t_min", "0.1"},
        {"t_max", "1.9"},
        {"t_steps", "37"}}},
      {"conditioned_click",
       "P(source decayed | detector clicked) vs Omega t for K = 7.5e-3, 1.5e-2, 7.5e-2 at 2 pi r/lambda = 1",
       {{"K_list", "7.5e-3,1.5e-2,7.5e-2"},
        {"rho", "1.0"},
        {"omega_t_min", "0.3"},
        {"omega_t_max", "40.0"},
        {"t_steps", "36"}}},
      {"rabi_ground",
       "ground-state qubit excitation probability vs g/omega (quadratic law)",
       {{"g_over_omega_min", "0.0"},
        {"g_over_omega_max", "1.0"},
        {"g_over_omega_steps", "51"},
        {"omega", "1.0"},
        {"n_max", "30"}}},
      {"antizeno",
       "eight-measurement survival at omega T1 = 2 pi with jitter 0.2 pi for epsilon = 0, 0.1, 0.2",
       {{"omega", "1.0"},
        {"g_over_omega", "1.0"},
        {"omega_T1", "6.283185307179586"},
        {"n_measurements", "8"},
        {"jitter", "0.6283185307179586"},
        {"n_runs", "20"},
        {"epsilon_list", "0,0.1,0.2"},
        {"n_max", "30"}}},
      {"majorana_example",
       "sigma_2 expectation, overlap and mixture entropy of the sigma_y Majorana example",
       {{"t_min", "0.0"},
        {"t_max", "3.141592653589793"},
        {"t_steps", "129"},
        {"p", "0.5"},
        {"phi", "1.5707963267948966"}}},
      {"klein_scattering",
       "Klein scattering off V(x) = x at m = 0.5: Dirac splits, Majorana passes",
       {{"m", "0.5"}, {"k0", "2.0"}, {"x0", "-6.0"}, {"t", "12.0"}}},
      {"symmetry_replay",
       "time-reversal replay: V_T applied mid-flight retraces the packet",
       {{"m", "0.5"}, {"k0", "2.0"}, {"x0", "-10.0"}, {"t_half", "5.0"}}},
      {"potential_transform",
       "Majorana linear potential removed by the x^2 sigma_x phase (equal densities)",
       {{"m", "0.5"}, {"g", "1.0"}, {"k0", "1.0"}, {"x0", "-4.0"}, {"t", "4.0"}}},
      {"two_body_oscillator",
       "two-body Majorana oscillator vs transformed quasi-free evolution",
       {{"m", "0.5"}, {"omega", "0.003"}, {"k0", "0.8"}, {"t", "3.0"}}},
  };
  return table;
}

inline const ScenarioInfo& find_scenario(const std::string& raw_name,
                                         ParamMap* implied) {
  std::string name = raw_name;
  // n-resolved aliases of the first scenario
  for (int n = 0; n <= 2; ++n) {
    if (raw_name == "atom_concurrence_n" + std::to_string(n)) {
      name = "atom_concurrence";
      if (implied) (*implied)["n"] = std::to_string(n);
    }
  }
  for (const auto& s : scenario_table()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown scenario '" + raw_name + "'");
}

struct RunOutput {
  std::string csv_path;
  std::string manifest_path;
};

// Executes a scenario and writes (a) the CSV with #-prefixed manifest header
// lines and (b) a manifest file in config format whose re-run reproduces the
// CSV byte for byte. Partial outputs are removed on failure.
inline RunOutput run(const ScenarioConfig& cfg) {
  ParamMap implied;
  const ScenarioInfo& info = find_scenario(cfg.scenario, &implied);
  ParamMap overrides = implied;
  for (const auto& [k, v] : cfg.params) overrides[k] = v;
  const detail::Params params(info.defaults, overrides);

  detail::Table table;
  try {
    using namespace detail;
    if (info.name == "atom_concurrence") table = run_atom_concurrence(params);
    else if (info.name == "atom_traced") table = run_atom_traced(params);
    else if (info.name == "bell_swap") table = run_bell_swap(params);
    else if (info.name == "esd_cycle") table = run_esd_cycle(params);
    else if (info.name == "circuit_lightcone") table = run_circuit_lightcone(params);
    else if (info.name == "fermi_causality") table = run_fermi_causality(params);
    else if (info.name == "conditioned_click") table = run_conditioned_click(params);
    else if (info.name == "rabi_ground") table = run_rabi_ground(params);
    else if (info.name == "antizeno") table = run_antizeno(params, cfg.seed);
    else if (info.name == "majorana_example") table = run_majorana_example(params);
    else if (info.name == "klein_scattering") table = run_klein_scattering(params);
    else if (info.name == "symmetry_replay") table = run_symmetry_replay(params);
    else if (info.name == "potential_transform") table = run_potential_transform(params);
    else if (info.name == "two_body_oscillator") table = run_two_body_oscillator(params);
    else throw ConfigError("scenario dispatch failed");
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericalError(std::string("scenario '") + info.name + "' failed: " + e.what());
  }

  RunOutput out;
  out.csv_path = cfg.output_path;
  out.manifest_path = cfg.output_path + ".manifest";
  std::ostringstream csv;
  csv << "# scenario=" << info.name << "\n";
  csv << "# version=" << LCQ_VERSION << "\n";
  csv << "# seed=" << cfg.seed << "\n";
  for (const auto& [k, v] : params.map()) csv << "# " << k << "=" << v << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    csv << (c ? "," : "") << table.columns[c];
  }
  csv << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      csv << (c ? "," : "") << detail::format_value(row[c]);
    }
    csv << "\n";
  }

  try {
    {
      std::ofstream f(out.csv_path, std::ios::binary);
      if (!f) throw NumericalError("cannot open output '" + out.csv_path + "'");
      f << csv.str();
    }
    std::ofstream mf(out.manifest_path, std::ios::binary);
    if (!mf) throw NumericalError("cannot open manifest '" + out.manifest_path + "'");
    mf << "scenario=" << info.name << "\n";
    mf << "seed=" << cfg.seed << "\n";
    for (const auto& [k, v] : params.map()) mf << k << "=" << v << "\n";
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(out.csv_path, ec);
    std::filesystem::remove(out.manifest_path, ec);
    throw;
  }
  return out;
}

// Parses a flat key=value config file ('#' starts a comment line).
inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config '" + path + "'");
  ScenarioConfig cfg;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("bad config line: '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "scenario") cfg.scenario = value;
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(detail::to_long(key, value));
    else if (key == "out") cfg.output_path = value;
    else cfg.params[key] = value;
  }
  return cfg;
}

}  // namespace lcq::scenarios
