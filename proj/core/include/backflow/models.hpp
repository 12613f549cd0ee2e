// models.hpp: exact global dynamics for the two solvable open-system models
// fed to the backflow bounds: a central qubit dephasing through sigma_z
// couplings to N environment qubits, and a two-level system exchanging
// excitations with a truncated bosonic mode.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "backflow/bounds.hpp"
#include "backflow/states.hpp"

namespace backflow {

// Central-qubit dephasing bath. omega_e and couplings must both have n_env
// entries; couplings must be nonzero. Frequencies default to zero: they
// commute with the coupling and drop out of every distinguishability
// quantifier.
struct SpinStarParams {
    std::size_t n_env = 5;
    double omega_s = 0.0;
    std::vector<double> omega_e;   // empty means all zero
    std::vector<double> couplings; // g_k, inverse-time units

    // couplings drawn iid uniform on (0, 2 * mean_coupling], deterministic
    // under the seed.
    static SpinStarParams with_random_couplings(std::size_t n_env, double mean_coupling,
                                                std::uint64_t seed);
};

// Two-level system coupled to one bosonic mode at strength g with detuning
// delta = omega_S - omega_E; thermal environment defined by beta_omega and the
// Fock cutoff.
struct JCParams {
    double g = 1.0;
    double delta = 0.5;
    double beta_omega = 1.0;
    std::size_t cutoff = 40;
};

// Time grid with a pair of global snapshots per point.
struct JointTrajectory {
    std::vector<double> times;
    std::vector<SnapshotPair> snapshots;
};

std::vector<double> uniform_grid(double horizon, std::size_t points);

// ---- spin star -------------------------------------------------------------

// Exact evolution of two system qubits paired with the maximally mixed
// N-qubit environment. The Hamiltonian is diagonal in the product sigma_z
// basis, so each joint matrix element picks up a pure phase. N > 7 (joint
// dimension past 256) is rejected.
JointTrajectory spin_star_evolve(const SpinStarParams& params, const DensityMatrix& rho0,
                                 const DensityMatrix& sigma0, const std::vector<double>& times,
                                 const Tolerances& tol = default_tolerances());

enum class SuperpositionSign { plus, minus };

// Reduced state of the (|1> +- |0>)/sqrt(2) initial condition: diagonal 1/2,
// coherence (+-1/2) e^{-2 i omega_s t} prod_k cos(2 g_k t).
DensityMatrix spin_star_reduced_analytic(const SpinStarParams& params, SuperpositionSign sign,
                                         double t, const Tolerances& tol = default_tolerances());

// The orthogonal superposition pair (|1>+|0>)/sqrt(2), (|1>-|0>)/sqrt(2).
std::pair<DensityMatrix, DensityMatrix> spin_star_initial_pair(
    const Tolerances& tol = default_tolerances());

// ---- Jaynes-Cummings --------------------------------------------------------

// Global unitary on the 2 (x) (cutoff+1) space, built blockwise on excitation
// sectors so it is exactly unitary on the truncated space. The top state
// |1, cutoff> closes with its exact diagonal phase (identically 1 in the
// frame used here, matching the g -> 0 limit of the sector blocks).
la::ComplexMatrix jc_propagator(const JCParams& params, double t);

// Reduced 2x2 state from the thermal expectations of the sector amplitude
// functions; exact for a stationary environment.
DensityMatrix jc_reduced_analytic(const JCParams& params, const DensityMatrix& rho0, double t,
                                  const Tolerances& tol = default_tolerances());

// Full joint snapshots via the propagator; every reduction is cross-checked
// against jc_reduced_analytic. Rejects cutoffs whose untruncated thermal tail
// mass exceeds 1e-12.
JointTrajectory jc_evolve(const JCParams& params, const DensityMatrix& rho0,
                          const DensityMatrix& sigma0, const std::vector<double>& times,
                          const Tolerances& tol = default_tolerances());

// Excited state and the balanced superposition (|1>+|0>)/sqrt(2).
std::pair<DensityMatrix, DensityMatrix> jc_initial_pair(
    const Tolerances& tol = default_tolerances());

// <sigma_+ sigma_- (x) 1 + 1 (x) n> of a joint state; conserved along the JC
// trajectory.
double jc_total_excitation(const DensityMatrix& joint, const la::Subsystems& subs);

}  // namespace backflow
