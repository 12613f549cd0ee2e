#include "backflow/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "backflow/rng.hpp"

namespace backflow {

namespace {

constexpr std::size_t kMaxJointDim = 256;
constexpr double kAnalyticCrossCheck = 1e-8;

}  // namespace

std::vector<double> uniform_grid(double horizon, std::size_t points) {
    if (!(horizon > 0.0)) throw std::invalid_argument("uniform_grid: horizon must be > 0");
    if (points < 2) throw std::invalid_argument("uniform_grid: need at least two grid points");
    std::vector<double> times(points);
    for (std::size_t i = 0; i < points; ++i)
        times[i] = horizon * static_cast<double>(i) / static_cast<double>(points - 1);
    return times;
}

// ---- spin star -------------------------------------------------------------

SpinStarParams SpinStarParams::with_random_couplings(std::size_t n_env, double mean_coupling,
                                                     std::uint64_t seed) {
    if (!(mean_coupling > 0.0))
        throw std::invalid_argument("SpinStarParams: mean coupling must be > 0");
    SpinStarParams params;
    params.n_env = n_env;
    params.omega_e.assign(n_env, 0.0);
    params.couplings.resize(n_env);
    Rng rng(seed);
    for (double& g : params.couplings) g = 2.0 * mean_coupling * (1.0 - rng.uniform01());
    return params;
}

namespace {

void validate_spin_star(const SpinStarParams& params) {
    if (params.n_env < 1)
        throw std::invalid_argument("spin_star: need at least one environment qubit");
    if ((std::size_t{2} << params.n_env) > kMaxJointDim) {
        std::ostringstream msg;
        msg << "spin_star: " << params.n_env << " environment qubits exceed the joint dimension cap "
            << kMaxJointDim;
        throw std::invalid_argument(msg.str());
    }
    if (params.couplings.size() != params.n_env)
        throw std::invalid_argument("spin_star: couplings list must have n_env entries");
    if (!params.omega_e.empty() && params.omega_e.size() != params.n_env)
        throw std::invalid_argument("spin_star: omega_e list must have n_env entries");
    for (double g : params.couplings)
        if (g == 0.0) throw std::invalid_argument("spin_star: couplings must be nonzero");
}

// Diagonal energies of the pure-dephasing Hamiltonian in the product sigma_z
// basis. Basis index 0 of a qubit carries sigma_z = +1.
std::vector<double> spin_star_energies(const SpinStarParams& params) {
    const std::size_t env_dim = std::size_t{1} << params.n_env;
    std::vector<double> energies(2 * env_dim);
    for (std::size_t a = 0; a < 2; ++a) {
        const double zs = a == 0 ? 1.0 : -1.0;
        for (std::size_t mask = 0; mask < env_dim; ++mask) {
            double e = params.omega_s * zs;
            for (std::size_t k = 0; k < params.n_env; ++k) {
                const double zk = ((mask >> k) & 1u) == 0 ? 1.0 : -1.0;
                e += params.couplings[k] * zs * zk;
                if (!params.omega_e.empty()) e += params.omega_e[k] * zk;
            }
            energies[a * env_dim + mask] = e;
        }
    }
    return energies;
}

la::ComplexMatrix phase_unitary(const std::vector<double>& energies, double t) {
    std::vector<la::cplx> phases(energies.size());
    for (std::size_t j = 0; j < energies.size(); ++j)
        phases[j] = std::exp(la::cplx(0.0, -energies[j] * t));
    return la::ComplexMatrix::diagonal(phases);
}

}  // namespace

JointTrajectory spin_star_evolve(const SpinStarParams& params, const DensityMatrix& rho0,
                                 const DensityMatrix& sigma0, const std::vector<double>& times,
                                 const Tolerances& tol) {
    validate_spin_star(params);
    if (rho0.dim() != 2 || sigma0.dim() != 2)
        throw std::invalid_argument("spin_star_evolve: system states must be qubits");

    const std::size_t env_dim = std::size_t{1} << params.n_env;
    const la::Subsystems subs{2, env_dim};
    const DensityMatrix environment = maximally_mixed(env_dim, tol);
    const DensityMatrix joint_rho0 = tensor(rho0, environment);
    const DensityMatrix joint_sigma0 = tensor(sigma0, environment);
    const std::vector<double> energies = spin_star_energies(params);

    JointTrajectory trajectory;
    trajectory.times = times;
    trajectory.snapshots.reserve(times.size());
    for (double t : times) {
        const la::ComplexMatrix u = phase_unitary(energies, t);
        trajectory.snapshots.push_back(SnapshotPair::from_joint(
            unitary_rotate(joint_rho0, u, tol), unitary_rotate(joint_sigma0, u, tol), subs, tol));
    }
    return trajectory;
}

DensityMatrix spin_star_reduced_analytic(const SpinStarParams& params, SuperpositionSign sign,
                                         double t, const Tolerances& tol) {
    validate_spin_star(params);
    double coherence = 0.5;
    for (double g : params.couplings) coherence *= std::cos(2.0 * g * t);
    if (sign == SuperpositionSign::minus) coherence = -coherence;

    la::ComplexMatrix m(2);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(0, 1) = coherence * std::exp(la::cplx(0.0, -2.0 * params.omega_s * t));
    m(1, 0) = std::conj(m(0, 1));
    return DensityMatrix::validate(m, tol);
}

std::pair<DensityMatrix, DensityMatrix> spin_star_initial_pair(const Tolerances& tol) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {pure({inv_sqrt2, inv_sqrt2}, tol), pure({inv_sqrt2, -inv_sqrt2}, tol)};
}

// ---- Jaynes-Cummings --------------------------------------------------------

namespace {

void validate_jc(const JCParams& params) {
    if (!(params.g > 0.0)) throw std::invalid_argument("jc: coupling g must be > 0");
    if (params.cutoff < 2) throw std::invalid_argument("jc: Fock cutoff must be >= 2");
    if (2 * (params.cutoff + 1) > kMaxJointDim)
        throw std::invalid_argument("jc: cutoff exceeds the joint dimension cap");
}

// sin(f t / 2) / f with the f -> 0 limit t / 2.
double half_sinc(double f, double t) {
    if (f == 0.0) return 0.5 * t;
    return std::sin(0.5 * f * t) / f;
}

// Sector amplitude functions of the number argument n.
la::cplx jc_c(const JCParams& params, double n, double t) {
    const double f = std::sqrt(params.delta * params.delta + 4.0 * params.g * params.g * n);
    const la::cplx frame = std::exp(la::cplx(0.0, 0.5 * params.delta * t));
    return frame * la::cplx(std::cos(0.5 * f * t), -params.delta * half_sinc(f, t));
}

la::cplx jc_d(const JCParams& params, double n, double t) {
    const double f = std::sqrt(params.delta * params.delta + 4.0 * params.g * params.g * n);
    const la::cplx frame = std::exp(la::cplx(0.0, 0.5 * params.delta * t));
    return la::cplx(0.0, -2.0 * params.g) * frame * half_sinc(f, t);
}

// System basis: index 0 ground, index 1 excited; joint index s*(cutoff+1)+n.
std::size_t jc_index(const JCParams& params, std::size_t s, std::size_t n) {
    return s * (params.cutoff + 1) + n;
}

std::vector<double> thermal_probabilities(const JCParams& params) {
    std::vector<double> p(params.cutoff + 1);
    double total = 0.0;
    for (std::size_t n = 0; n <= params.cutoff; ++n) {
        p[n] = std::exp(-params.beta_omega * static_cast<double>(n));
        total += p[n];
    }
    for (double& v : p) v /= total;
    return p;
}

}  // namespace

la::ComplexMatrix jc_propagator(const JCParams& params, double t) {
    validate_jc(params);
    const std::size_t fock = params.cutoff + 1;
    la::ComplexMatrix u(2 * fock);

    for (std::size_t n = 0; n < fock; ++n)
        u(jc_index(params, 0, n), jc_index(params, 0, n)) =
            std::conj(jc_c(params, static_cast<double>(n), t));

    for (std::size_t n = 0; n + 1 < fock; ++n) {
        const double excitation = static_cast<double>(n + 1);
        const la::cplx c = jc_c(params, excitation, t);
        const la::cplx d = jc_d(params, excitation, t);
        const double root = std::sqrt(excitation);
        u(jc_index(params, 1, n), jc_index(params, 1, n)) = c;
        u(jc_index(params, 1, n), jc_index(params, 0, n + 1)) = root * d;
        u(jc_index(params, 0, n + 1), jc_index(params, 1, n)) = -root * std::conj(d);
    }
    // Top of the truncated ladder: |1, cutoff> keeps its diagonal phase, which
    // is 1 in this frame.
    u(jc_index(params, 1, params.cutoff), jc_index(params, 1, params.cutoff)) = 1.0;
    return u;
}

DensityMatrix jc_reduced_analytic(const JCParams& params, const DensityMatrix& rho0, double t,
                                  const Tolerances& tol) {
    validate_jc(params);
    if (rho0.dim() != 2)
        throw std::invalid_argument("jc_reduced_analytic: system state must be a qubit");

    const std::vector<double> p = thermal_probabilities(params);
    double alpha = 0.0, beta = 0.0;
    la::cplx gamma(0.0, 0.0);
    for (std::size_t n = 0; n <= params.cutoff; ++n) {
        const la::cplx cn = jc_c(params, static_cast<double>(n), t);
        const la::cplx cn1 = jc_c(params, static_cast<double>(n + 1), t);
        alpha += p[n] * std::norm(cn);
        beta += p[n] * std::norm(cn1);
        gamma += p[n] * cn * cn1;
    }

    const double rho00 = rho0.matrix()(0, 0).real();  // ground population
    const double rho11 = rho0.matrix()(1, 1).real();  // excited population
    const la::cplx rho10 = rho0.matrix()(1, 0);       // <1|rho|0>

    la::ComplexMatrix m(2);
    m(1, 1) = rho00 * (1.0 - alpha) + rho11 * beta;
    m(0, 0) = rho00 * alpha + rho11 * (1.0 - beta);
    m(1, 0) = rho10 * gamma;
    m(0, 1) = std::conj(m(1, 0));
    return DensityMatrix::validate(m, tol);
}

JointTrajectory jc_evolve(const JCParams& params, const DensityMatrix& rho0,
                          const DensityMatrix& sigma0, const std::vector<double>& times,
                          const Tolerances& tol) {
    validate_jc(params);
    if (rho0.dim() != 2 || sigma0.dim() != 2)
        throw std::invalid_argument("jc_evolve: system states must be qubits");

    const ThermalSpec thermal{params.beta_omega, params.cutoff};
    const double tail = thermal_tail_mass(thermal);
    if (tail > 1e-12) {
        std::ostringstream msg;
        msg << "jc_evolve: thermal tail mass " << tail
            << " beyond the cutoff exceeds 1e-12; increase the cutoff";
        throw std::invalid_argument(msg.str());
    }

    const DensityMatrix environment = truncated_thermal(thermal, tol);
    const la::Subsystems subs{2, params.cutoff + 1};
    const DensityMatrix joint_rho0 = tensor(rho0, environment);
    const DensityMatrix joint_sigma0 = tensor(sigma0, environment);

    JointTrajectory trajectory;
    trajectory.times = times;
    trajectory.snapshots.reserve(times.size());
    for (double t : times) {
        const la::ComplexMatrix u = jc_propagator(params, t);
        SnapshotPair snapshot = SnapshotPair::from_joint(
            unitary_rotate(joint_rho0, u, tol), unitary_rotate(joint_sigma0, u, tol), subs, tol);

        const double defect_rho =
            (snapshot.rho_s.matrix() - jc_reduced_analytic(params, rho0, t, tol).matrix()).max_abs();
        const double defect_sigma =
            (snapshot.sigma_s.matrix() - jc_reduced_analytic(params, sigma0, t, tol).matrix())
                .max_abs();
        if (defect_rho > kAnalyticCrossCheck || defect_sigma > kAnalyticCrossCheck) {
            std::ostringstream msg;
            msg << "jc_evolve: reduced state disagrees with the analytic form at t = " << t
                << " (defect " << std::max(defect_rho, defect_sigma) << ")";
            throw std::logic_error(msg.str());
        }
        trajectory.snapshots.push_back(std::move(snapshot));
    }
    return trajectory;
}

std::pair<DensityMatrix, DensityMatrix> jc_initial_pair(const Tolerances& tol) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {pure({0.0, 1.0}, tol), pure({inv_sqrt2, inv_sqrt2}, tol)};
}

double jc_total_excitation(const DensityMatrix& joint, const la::Subsystems& subs) {
    if (subs.total() != joint.dim())
        throw std::invalid_argument("jc_total_excitation: tensor structure mismatch");
    double expectation = 0.0;
    for (std::size_t s = 0; s < subs.system; ++s)
        for (std::size_t n = 0; n < subs.environment; ++n) {
            const double number = static_cast<double>(n) + (s == 1 ? 1.0 : 0.0);
            expectation += number * joint.matrix()(s * subs.environment + n,
                                                   s * subs.environment + n).real();
        }
    return expectation;
}

}  // namespace backflow
