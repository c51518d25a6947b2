#include "otoc/dressing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace otoc::dressing {

namespace {

constexpr int kG = static_cast<int>(Level::g);
constexpr int kS = static_cast<int>(Level::S);
constexpr int kP = static_cast<int>(Level::P);

void check_distance(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("interatomic distance must be positive, got " +
                                std::to_string(r));
  }
}

struct PairEigen {
  Eigen::Matrix<double, 9, 1> values;
  PairMatrix vectors;
};

PairEigen diagonalize(const PairMatrix& h) {
  Eigen::SelfAdjointEigenSolver<PairMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("two-atom eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Index of the eigenvector with the largest weight on |gg>.
Eigen::Index ground_connected(const PairEigen& eig) {
  constexpr int gg = pair_index(Level::g, Level::g);
  Eigen::Index best = 0;
  eig.vectors.row(gg).cwiseAbs2().maxCoeff(&best);
  double weight = eig.vectors(gg, best) * eig.vectors(gg, best);
  if (!(weight > kMinOverlap)) {
    throw AdiabaticityError("no dressed pair state with |gg> weight above " +
                            std::to_string(kMinOverlap) + " (best " +
                            std::to_string(weight) + ")");
  }
  return best;
}

// E_0 = 2 E_g - E_gg(r -> infinity), zero up to rounding.
double asymptotic_offset(const LevelScheme& scheme) {
  PairMatrix h = build_two_atom_hamiltonian(scheme, {0.0, 0.0}, 1.0);
  PairEigen eig = diagonalize(h);
  return 2.0 * single_atom_ground_energy(scheme) -
         eig.values(ground_connected(eig));
}

}  // namespace

void LevelScheme::check() const {
  for (double v : {laser_rabi, laser_detuning, microwave_rabi,
                   microwave_detuning}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("level scheme entries must be finite");
    }
  }
  if (laser_rabi < 0.0 || microwave_rabi < 0.0) {
    throw std::invalid_argument("Rabi frequencies must be non-negative");
  }
}

LevelScheme LevelScheme::without_microwave() const {
  LevelScheme s = *this;
  s.microwave_rabi = 0.0;
  return s;
}

double microwave_detuning_for_lower_branch(double laser_detuning,
                                           double microwave_rabi,
                                           double lower_energy) {
  // Lower eigenvalue of [[0, W/2], [W/2, d]] relative to E_S is
  // (d - sqrt(W^2 + d^2)) / 2 = -c / 2  =>  d = (W^2 - c^2) / (2c).
  double c = 2.0 * (laser_detuning - lower_energy);
  if (!(c > 0.0)) {
    throw std::invalid_argument(
        "lower microwave-dressed state must lie below the S level");
  }
  return (microwave_rabi * microwave_rabi - c * c) / (2.0 * c);
}

LevelScheme reference_scheme() {
  LevelScheme s;
  s.laser_rabi = 2.0;
  s.laser_detuning = 4.0;
  s.microwave_rabi = 30.0;
  s.microwave_detuning = microwave_detuning_for_lower_branch(4.0, 30.0, -4.4);
  return s;
}

SingleMatrix build_single_atom_hamiltonian(const LevelScheme& scheme) {
  scheme.check();
  SingleMatrix h = SingleMatrix::Zero();
  h(kS, kS) = scheme.laser_detuning;
  h(kP, kP) = scheme.laser_detuning + scheme.microwave_detuning;
  h(kG, kS) = h(kS, kG) = 0.5 * scheme.laser_rabi;
  h(kS, kP) = h(kP, kS) = 0.5 * scheme.microwave_rabi;
  return h;
}

PairMatrix build_two_atom_hamiltonian(const LevelScheme& scheme,
                                      const InteractionCoefficients& coeffs,
                                      double r) {
  check_distance(r);
  const SingleMatrix h1 = build_single_atom_hamiltonian(scheme);
  PairMatrix h = PairMatrix::Zero();
  // h1 (x) 1 + 1 (x) h1
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        h(3 * a + c, 3 * b + c) += h1(a, b);
        h(3 * c + a, 3 * c + b) += h1(a, b);
      }
    }
  }
  constexpr int ss = pair_index(Level::S, Level::S);
  constexpr int sp = pair_index(Level::S, Level::P);
  constexpr int ps = pair_index(Level::P, Level::S);
  h(ss, ss) += coeffs.c6 / std::pow(r, 6);
  double exchange = coeffs.c3 / std::pow(r, 3);
  h(sp, ps) += exchange;
  h(ps, sp) += exchange;
  return h;
}

std::array<double, 4> pair_potential(const LevelScheme& scheme,
                                     const InteractionCoefficients& coeffs,
                                     double r) {
  PairMatrix h = build_two_atom_hamiltonian(scheme, coeffs, r);
  constexpr std::array<int, 4> idx = {
      pair_index(Level::S, Level::S), pair_index(Level::S, Level::P),
      pair_index(Level::P, Level::S), pair_index(Level::P, Level::P)};
  Eigen::Matrix4d block;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) block(a, b) = h(idx[a], idx[b]);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(block,
                                                        Eigen::EigenvaluesOnly);
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) out[k] = solver.eigenvalues()(k);
  return out;
}

double single_atom_ground_energy(const LevelScheme& scheme) {
  Eigen::SelfAdjointEigenSolver<SingleMatrix> solver(
      build_single_atom_hamiltonian(scheme));
  Eigen::Index best = 0;
  solver.eigenvectors().row(kG).cwiseAbs2().maxCoeff(&best);
  return solver.eigenvalues()(best);
}

double dressed_ising_coupling(const LevelScheme& scheme,
                              const InteractionCoefficients& coeffs,
                              double r) {
  PairEigen eig = diagonalize(build_two_atom_hamiltonian(scheme, coeffs, r));
  double e_gg = eig.values(ground_connected(eig));
  return e_gg - 2.0 * single_atom_ground_energy(scheme) +
         asymptotic_offset(scheme);
}

DressedCurve scan_curve(const LevelScheme& scheme,
                        const InteractionCoefficients& coeffs, double r_min,
                        double r_max, int n_points, bool microwave_on) {
  if (!(r_min > 0.0) || !(r_max > r_min)) {
    throw std::invalid_argument("scan requires 0 < r_min < r_max");
  }
  if (n_points < 2) throw std::invalid_argument("scan requires n_points >= 2");
  const LevelScheme s = microwave_on ? scheme : scheme.without_microwave();
  s.check();

  const auto n = static_cast<std::size_t>(n_points);
  DressedCurve curve;
  curve.distances.resize(n);
  curve.j_values.resize(n);
  const double step = (r_max - r_min) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    curve.distances[k] =
        k + 1 == n ? r_max : r_min + step * static_cast<double>(k);
  }

  const double shift = -2.0 * single_atom_ground_energy(s) +
                       asymptotic_offset(s);
  Eigen::Matrix<double, 9, 1> previous;
  for (std::size_t k = n; k-- > 0;) {
    const double r = curve.distances[k];
    PairEigen eig = diagonalize(build_two_atom_hamiltonian(s, coeffs, r));
    Eigen::Index pick = 0;
    if (k + 1 == n) {
      pick = ground_connected(eig);
    } else {
      (eig.vectors.transpose() * previous).cwiseAbs2().maxCoeff(&pick);
      double overlap = std::pow(eig.vectors.col(pick).dot(previous), 2);
      if (!(overlap > kMinOverlap)) {
        throw AdiabaticityError("lost the |gg>-connected branch at r = " +
                                std::to_string(r));
      }
    }
    previous = eig.vectors.col(pick);
    curve.j_values[k] = eig.values(pick) + shift;
  }
  return curve;
}

std::optional<InversionWindow> find_inversion_window(const DressedCurve& off,
                                                     const DressedCurve& on,
                                                     double ratio_lo,
                                                     double ratio_hi) {
  if (off.distances != on.distances ||
      off.j_values.size() != off.distances.size() ||
      on.j_values.size() != on.distances.size()) {
    throw std::invalid_argument("curves must share one distance grid");
  }
  auto inverted = [&](std::size_t k) {
    double a = off.j_values[k];
    double b = on.j_values[k];
    if (!(a * b < 0.0)) return false;
    double ratio = std::abs(b / a);
    return ratio >= ratio_lo && ratio <= ratio_hi;
  };

  std::optional<InversionWindow> best;
  const std::size_t n = off.distances.size();
  std::size_t k = 0;
  while (k < n) {
    if (!inverted(k)) {
      ++k;
      continue;
    }
    std::size_t first = k;
    while (k + 1 < n && inverted(k + 1)) ++k;
    InversionWindow w{off.distances[first], off.distances[k], first, k};
    if (!best || w.span() > best->span()) best = w;
    ++k;
  }
  return best;
}

InversionSearchGrid InversionSearchGrid::documented() {
  InversionSearchGrid g;
  for (int rabi = 10; rabi <= 60; rabi += 5) g.microwave_rabi.push_back(rabi);
  for (int det = -40; det <= 40; det += 2) g.microwave_detuning.push_back(det);
  return g;
}

std::optional<InversionSearchResult> search_inversion(
    const LevelScheme& base, const InteractionCoefficients& coeffs,
    const InversionSearchGrid& grid) {
  DressedCurve off = scan_curve(base, coeffs, grid.r_min, grid.r_max,
                                grid.n_points, false);
  std::optional<InversionSearchResult> best;
  for (double rabi : grid.microwave_rabi) {
    for (double det : grid.microwave_detuning) {
      LevelScheme s = base;
      s.microwave_rabi = rabi;
      s.microwave_detuning = det;
      DressedCurve on;
      try {
        on = scan_curve(s, coeffs, grid.r_min, grid.r_max, grid.n_points,
                        true);
      } catch (const AdiabaticityError&) {
        continue;
      }
      auto window = find_inversion_window(off, on);
      if (window && (!best || window->span() > best->window.span())) {
        best = InversionSearchResult{s, *window, off, std::move(on)};
      }
    }
  }
  return best;
}

}  // namespace otoc::dressing
