#include "overlap/oracle.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>

#include "overlap/schur_stats.hpp"

namespace overlap {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

constexpr int kMaxQubits = 12;

// single-qubit Pauli halves embedded at qubit position q of n
void add_half_pauli(MatrixXcd& target, int n, int q, char axis) {
    const long dim = 1L << n;
    const long bit = 1L << (n - 1 - q); // qubit 0 is the leftmost tensor factor
    const std::complex<double> I{0.0, 1.0};
    for (long i = 0; i < dim; ++i) {
        const bool up = (i & bit) == 0;
        const long j = i ^ bit;
        switch (axis) {
            case 'x': target(j, i) += 0.5; break;
            case 'y': target(j, i) += up ? 0.5 * I : -0.5 * I; break;
            case 'z': target(i, i) += up ? 0.5 : -0.5; break;
        }
    }
}

} // namespace

Eigen::MatrixXd BlockSpectrum::projector(HalfInt J) const {
    const Block& b = block(J);
    return b.basis * b.basis.transpose();
}

const BlockSpectrum::Block& BlockSpectrum::block(HalfInt J) const {
    for (const auto& b : blocks)
        if (b.J == J) return b;
    throw OutOfRange("BlockSpectrum: no block with J = " + J.str());
}

BlockSpectrum casimir_projectors(int n) {
    if (n < 1) throw OutOfRange("casimir_projectors: n must be >= 1");
    if (n > kMaxQubits)
        throw TooLarge("casimir_projectors: n = " + std::to_string(n) + " exceeds the 12-qubit cap");
    const long dim = 1L << n;
    MatrixXcd sx = MatrixXcd::Zero(dim, dim), sy = MatrixXcd::Zero(dim, dim),
              sz = MatrixXcd::Zero(dim, dim);
    for (int q = 0; q < n; ++q) {
        add_half_pauli(sx, n, q, 'x');
        add_half_pauli(sy, n, q, 'y');
        add_half_pauli(sz, n, q, 'z');
    }
    const MatrixXcd s2c = sx * sx + sy * sy + sz * sz;
    if (s2c.imag().cwiseAbs().maxCoeff() > 1e-12)
        throw Error("casimir_projectors: S^2 is not real");
    const MatrixXd s2 = s2c.real();

    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(s2);
    const VectorXd evals = solver.eigenvalues();
    const MatrixXd evecs = solver.eigenvectors();

    // candidate ladder: J = n/2, n/2-1, ..., down to 0 or 1/2
    BlockSpectrum out;
    out.n = n;
    for (HalfInt J = HalfInt::from_twice(n % 2); J <= HalfInt::from_twice(n); J += HalfInt::whole(1)) {
        const double target = J.value() * (J.value() + 1.0);
        std::vector<long> cols;
        for (long i = 0; i < dim; ++i)
            if (std::abs(evals(i) - target) < 1e-8) cols.push_back(i);
        if (cols.empty()) continue;
        MatrixXd basis(dim, static_cast<long>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) basis.col(static_cast<long>(k)) = evecs.col(cols[k]);
        out.blocks.push_back({J, std::move(basis)});
    }
    // every eigenvalue must have matched a ladder candidate
    long matched = 0;
    for (const auto& b : out.blocks) matched += b.basis.cols();
    if (matched != dim) throw Error("casimir_projectors: eigenvalue grouping left unmatched vectors");
    return out;
}

namespace {

// Spectra up to 10 qubits are reused heavily by the verification suites;
// the 11- and 12-qubit cases stay uncached (large and rarely requested).
const BlockSpectrum& cached_casimir(int n) {
    static std::map<int, BlockSpectrum> cache;
    static std::mutex mu;
    if (n > 10) {
        thread_local BlockSpectrum big;
        big = casimir_projectors(n);
        return big;
    }
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, casimir_projectors(n)).first;
    return it->second;
}

// |0>^N tensor (sqrt(c)|0> + sqrt(1-c)|1>)^M as a real amplitude vector
VectorXd product_state(int M, int N, double c) {
    const int n = M + N;
    const long dim = 1L << n;
    const double a0 = std::sqrt(c), a1 = std::sqrt(1.0 - c);
    VectorXd psi = VectorXd::Zero(dim);
    // first N qubits (most significant bits) must be 0
    const long m_dim = 1L << M;
    for (long m = 0; m < m_dim; ++m) {
        double amp = 1.0;
        for (int b = 0; b < M; ++b) amp *= ((m >> b) & 1) ? a1 : a0;
        psi(m) = amp; // high N bits zero => index is just m
    }
    return psi;
}

} // namespace

std::vector<std::pair<HalfInt, double>> oracle_p_j(int M, int N, double c) {
    if (M + N > kMaxQubits) throw TooLarge("oracle_p_j: M+N exceeds the 12-qubit cap");
    c = clamp_unit(c, "oracle_p_j");
    const BlockSpectrum& spec = cached_casimir(M + N);
    const VectorXd psi = product_state(M, N, c);
    std::vector<std::pair<HalfInt, double>> out;
    for (const auto& b : spec.blocks) {
        const VectorXd proj = b.basis.transpose() * psi;
        out.emplace_back(b.J, proj.squaredNorm());
    }
    return out;
}

std::vector<MixedJointEntry> oracle_mixed_joint(int M, int N, double c, double r0, double r1) {
    if (M + N > 10) throw TooLarge("oracle_mixed_joint: M+N exceeds the 10-qubit cap");
    c = clamp_unit(c, "oracle_mixed_joint");
    r0 = clamp_unit(r0, "oracle_mixed_joint r0");
    r1 = clamp_unit(r1, "oracle_mixed_joint r1");

    // single-qubit density operators (real amplitudes throughout)
    const MatrixXd id2 = MatrixXd::Identity(2, 2);
    VectorXd psi1(2), phi1(2);
    psi1 << 1.0, 0.0;
    phi1 << std::sqrt(c), std::sqrt(1.0 - c);
    const MatrixXd rho_psi = r0 * psi1 * psi1.transpose() + (1.0 - r0) * 0.5 * id2;
    const MatrixXd rho_phi = r1 * phi1 * phi1.transpose() + (1.0 - r1) * 0.5 * id2;

    auto kron_power = [](const MatrixXd& a, int k) {
        MatrixXd out = MatrixXd::Identity(1, 1);
        for (int i = 0; i < k; ++i) {
            MatrixXd next(out.rows() * a.rows(), out.cols() * a.cols());
            for (long r = 0; r < out.rows(); ++r)
                for (long s = 0; s < out.cols(); ++s)
                    next.block(r * a.rows(), s * a.cols(), a.rows(), a.cols()) = out(r, s) * a;
            out = std::move(next);
        }
        return out;
    };

    const MatrixXd rho_n = kron_power(rho_psi, N);
    const MatrixXd rho_m = kron_power(rho_phi, M);

    const BlockSpectrum& spec_n = cached_casimir(N);
    const BlockSpectrum& spec_m = cached_casimir(M);
    const BlockSpectrum& spec_all = cached_casimir(M + N);

    const long dn = 1L << N, dm = 1L << M;
    std::vector<MixedJointEntry> out;
    for (const auto& b0 : spec_n.blocks) {
        const MatrixXd a_block = b0.basis * (b0.basis.transpose() * rho_n); // Pi_J0 rho_N
        for (const auto& b1 : spec_m.blocks) {
            const MatrixXd b_block = b1.basis * (b1.basis.transpose() * rho_m); // Pi_J1 rho_M
            for (const auto& bt : spec_all.blocks) {
                if (!triangle_ok(b0.J, b1.J, bt.J)) continue;
                // tr(Pi_J (A x B)) = sum_cols v^T (A x B) v via the reshape trick
                double p = 0.0;
                for (long col = 0; col < bt.basis.cols(); ++col) {
                    Eigen::Map<const MatrixXd> v(bt.basis.col(col).data(), dm, dn);
                    // index = i_n * 2^M + i_m, so the reshaped matrix is (m x n)
                    const MatrixXd av = b_block * v * a_block.transpose();
                    p += (v.array() * av.array()).sum();
                }
                out.push_back({bt.J, b0.J, b1.J, p});
            }
        }
    }
    return out;
}

double oracle_fidelity_optimal(int M, int N, double c) {
    const auto pj = oracle_p_j(M, N, c);
    KahanSum sum;
    for (const auto& [j, p] : pj) sum.add(p * p);
    return sum.value();
}

double fisher_fd(const Scenario& s, double c, double step) {
    if (c - step <= 0.0 || c + step >= 1.0)
        throw Endpoint("fisher_fd: stencil leaves (0,1)");
    KahanSum h;
    for (HalfInt J : s.j_ladder()) {
        const double p = p_j_given_c(s, J, c);
        if (p < 1e-290) continue;
        const double dp = (p_j_given_c(s, J, c + step) - p_j_given_c(s, J, c - step)) / (2.0 * step);
        h.add(dp * dp / p);
    }
    return h.value();
}

} // namespace overlap
