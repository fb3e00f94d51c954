#pragma once

#include <Eigen/Dense>
#include <vector>

#include "overlap/scenario.hpp"

namespace overlap {

// Eigenspaces of the total-spin Casimir S^2 on n qubits, grouped by the
// eigenvalue J(J+1).  `basis` columns are orthonormal; the projector on a
// block is basis * basis^T.
struct BlockSpectrum {
    int n = 0;
    struct Block {
        HalfInt J;
        Eigen::MatrixXd basis;
    };
    std::vector<Block> blocks; // ascending J

    Eigen::MatrixXd projector(HalfInt J) const;
    const Block& block(HalfInt J) const;
};

/// Builds Sx, Sy, Sz as sums of single-qubit half-Paulis, diagonalizes
/// S^2 = Sx^2 + Sy^2 + Sz^2 and groups eigenvectors by the known ladder
/// eigenvalues J(J+1).  Throws TooLarge for n > 12.
BlockSpectrum casimir_projectors(int n);

/// <Psi| Pi_J |Psi> for |Psi> = |0>^N tensor (sqrt(c)|0> + sqrt(1-c)|1>)^M,
/// over the full n-qubit ladder (entries below J_min are numerically zero).
std::vector<std::pair<HalfInt, double>> oracle_p_j(int M, int N, double c);

/// Joint statistics of the commuting projector triple
/// (Pi_J0 on the first N qubits, Pi_J1 on the last M, Pi_J on all) for the
/// depolarized product state at purity (r0, r1).
struct MixedJointEntry {
    HalfInt J, J0, J1;
    double prob;
};
std::vector<MixedJointEntry> oracle_mixed_joint(int M, int N, double c, double r0, double r1);

/// sum_J <Psi|Pi_J|Psi>^2 for the concrete product state; equals the
/// closed-form post-measurement fidelity of the optimal strategy.
double oracle_fidelity_optimal(int M, int N, double c);

/// Central finite-difference Fisher information assembled from p(J|c);
/// an independent oracle for the analytic derivative route.
double fisher_fd(const Scenario& s, double c, double step = 1e-5);

} // namespace overlap
