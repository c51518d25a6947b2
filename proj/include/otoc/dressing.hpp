#pragma once

// Reduced two-atom model of microwave-assisted Rydberg dressing.
//
// Each atom has a ground state g, a Rydberg state S addressed by the dressing
// laser, and a Rydberg state P coupled to S by a microwave. Energies are in
// MHz, distances in micrometres, and the Hamiltonian is written in the frame
// rotating with both drives:
//
//   E_g = 0,  E_S = laser_detuning,  E_P = laser_detuning + microwave_detuning
//
// so laser_detuning > 0 means the laser is red of the g-S resonance and the
// pair state |SS> sits at 2 laser_detuning + C6/r^6. The two atoms interact
// through a van der Waals shift C6/r^6 on |SS> and a resonant dipolar
// exchange C3/r^3 between |SP> and |PS>. The two-atom basis index is
// 3 * level(atom 1) + level(atom 2) with levels ordered g, S, P.

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "otoc/errors.hpp"

namespace otoc::dressing {

enum class Level { g = 0, S = 1, P = 2 };

inline constexpr int pair_index(Level a, Level b) {
  return 3 * static_cast<int>(a) + static_cast<int>(b);
}

struct LevelScheme {
  double laser_rabi = 0.0;          // Omega_L, g <-> S
  double laser_detuning = 0.0;      // E_S in the rotating frame
  double microwave_rabi = 0.0;      // Omega_mu, S <-> P
  double microwave_detuning = 0.0;  // E_P - E_S in the rotating frame

  /// Throws std::invalid_argument on negative Rabi frequencies or
  /// non-finite entries.
  void check() const;
  LevelScheme without_microwave() const;
};

struct InteractionCoefficients {
  double c6 = 0.0;  // MHz um^6, |SS> van der Waals shift
  double c3 = 0.0;  // MHz um^3, |SP> <-> |PS> exchange

  /// Illustrative values placing the vdW/dipolar crossing near 3.9 um.
  /// These are not atomic data.
  static InteractionCoefficients example() { return {2.0e4, -1.0e3}; }
};

/// Dressed Ising coupling J(r) on a distance grid.
struct DressedCurve {
  std::vector<double> distances;
  std::vector<double> j_values;
};

using PairMatrix = Eigen::Matrix<double, 9, 9>;
using SingleMatrix = Eigen::Matrix<double, 3, 3>;

/// Microwave detuning that puts the lower microwave-dressed S/P state at
/// `lower_energy` (rotating frame) for the given laser detuning and
/// microwave Rabi frequency. Requires lower_energy < laser_detuning.
double microwave_detuning_for_lower_branch(double laser_detuning,
                                           double microwave_rabi,
                                           double lower_energy);

/// Laser Rabi 2 MHz, laser 4 MHz red of the bare resonance, microwave Rabi
/// 30 MHz with the lower microwave-dressed state 4.4 MHz below the laser.
LevelScheme reference_scheme();

SingleMatrix build_single_atom_hamiltonian(const LevelScheme& scheme);

/// Throws std::invalid_argument if r <= 0.
PairMatrix build_two_atom_hamiltonian(const LevelScheme& scheme,
                                      const InteractionCoefficients& coeffs,
                                      double r);

/// Sorted eigenvalues of the doubly excited block {SS, SP, PS, PP}. Laser
/// couplings never enter this block.
std::array<double, 4> pair_potential(const LevelScheme& scheme,
                                     const InteractionCoefficients& coeffs,
                                     double r);

/// Energy of the single-atom dressed state with the largest |g> weight.
double single_atom_ground_energy(const LevelScheme& scheme);

/// Minimum |<gg|v>|^2 for the dressed pair state to count as connected to
/// |gg>; also the minimum squared overlap between successive grid points
/// during a scan.
inline constexpr double kMinOverlap = 0.5;

/// J(r) = E_gg(r) - 2 E_g + E_0, with E_gg the eigenstate of largest |gg>
/// weight and E_0 fixing J(infinity) = 0. Throws AdiabaticityError if that
/// weight does not exceed kMinOverlap.
double dressed_ising_coupling(const LevelScheme& scheme,
                              const InteractionCoefficients& coeffs, double r);

/// J(r) on a uniform grid. The |gg>-connected state is identified at r_max
/// and followed inward by maximum overlap with the previous grid point's
/// eigenvector. With microwave_on == false the microwave Rabi frequency is
/// set to zero.
DressedCurve scan_curve(const LevelScheme& scheme,
                        const InteractionCoefficients& coeffs, double r_min,
                        double r_max, int n_points, bool microwave_on);

/// Longest contiguous stretch of grid points where J_off J_on < 0 and
/// |J_on / J_off| lies in [ratio_lo, ratio_hi].
struct InversionWindow {
  double r_lo = 0.0;
  double r_hi = 0.0;
  std::size_t first = 0;
  std::size_t last = 0;

  double span() const { return r_lo > 0.0 ? r_hi / r_lo : 0.0; }
};

std::optional<InversionWindow> find_inversion_window(
    const DressedCurve& off, const DressedCurve& on, double ratio_lo = 0.5,
    double ratio_hi = 2.0);

/// Grid of microwave settings scanned by search_inversion.
struct InversionSearchGrid {
  std::vector<double> microwave_rabi;
  std::vector<double> microwave_detuning;
  double r_min = 1.5;
  double r_max = 12.0;
  int n_points = 211;

  /// Rabi 10, 15, ..., 60 MHz; detuning -40, -38, ..., 40 MHz; r in
  /// [1.5, 12] um at 0.05 um spacing.
  static InversionSearchGrid documented();
};

struct InversionSearchResult {
  LevelScheme scheme;
  InversionWindow window;
  DressedCurve off;
  DressedCurve on;
};

/// Scans the grid (Rabi outer, detuning inner) with the laser settings of
/// `base` and returns the setting with the widest inversion window; ties go
/// to the earlier grid point. Settings whose scan loses the |gg> branch are
/// skipped. Returns nullopt if no setting yields a window.
std::optional<InversionSearchResult> search_inversion(
    const LevelScheme& base, const InteractionCoefficients& coeffs,
    const InversionSearchGrid& grid);

}  // namespace otoc::dressing
