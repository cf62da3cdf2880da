// oracle.hpp: brute-force GKSL integration in the tensor-product space and comparisons against the reduced models

#pragma once

#include "basis.hpp"
#include "effective.hpp"
#include "rates.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace wstate {

// Standard: L ρ L† − ½{L†L, ρ}.  SwappedOrder: L ρ L† − ½{L L†, ρ}, selectable for comparison.
enum class Dissipator { Standard, SwappedOrder };

inline void require_square(const Matrix& m, Eigen::Index dim, const char* what) {
    if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

inline Matrix gksl_rhs(const Matrix& H, const std::vector<Matrix>& L, const Matrix& rho,
                       Dissipator order = Dissipator::Standard) {
    const Eigen::Index d = rho.rows();
    require_square(rho, d, "gksl_rhs (rho)");
    require_square(H, d, "gksl_rhs (H)");
    Matrix out = -I_unit * commutator(H, rho);
    for (const auto& l : L) {
        require_square(l, d, "gksl_rhs (Lindblad)");
        const Matrix ll = order == Dissipator::Standard ? Matrix(l.adjoint() * l) : Matrix(l * l.adjoint());
        out += l * rho * l.adjoint() - 0.5 * (ll * rho + rho * ll);
    }
    return out;
}

// Row-major vectorisation: vec(AρB) = (A ⊗ Bᵀ) vec(ρ).
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

inline Matrix liouvillian(const Matrix& H, const std::vector<Matrix>& L, Dissipator order = Dissipator::Standard) {
    const Eigen::Index d = H.rows();
    require_square(H, d, "liouvillian (H)");
    const Matrix id = Matrix::Identity(d, d);
    Matrix s = -I_unit * (kron(H, id) - kron(id, H.transpose()));
    for (const auto& l : L) {
        require_square(l, d, "liouvillian (Lindblad)");
        const Matrix ll = order == Dissipator::Standard ? Matrix(l.adjoint() * l) : Matrix(l * l.adjoint());
        s += kron(l, l.conjugate()) - 0.5 * kron(ll, id) - 0.5 * kron(id, ll.transpose());
    }
    return s;
}

// ------------------------------------ integration ------------------------------------

enum class Stepper { Rk4, Exact };

struct IntegrateOptions {
    Stepper stepper = Stepper::Exact;
    Dissipator dissipator = Dissipator::Standard;
    int record_stride = 1;
    double trace_drift_limit = 1e-6;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<Matrix> rho;
};

class IntegrationUnstable : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Fixed step for the Rk4 stepper: 0.005 over the spectral norm of H_NH.
inline double default_rk4_step(const Matrix& H, const std::vector<Matrix>& L) {
    Matrix hnh = H;
    for (const auto& l : L) hnh -= 0.5 * I_unit * (l.adjoint() * l);
    Eigen::JacobiSVD<Matrix> svd(hnh);
    const double s = svd.singularValues()(0);
    if (!(s > 0.0)) throw std::invalid_argument("default_rk4_step: zero generator");
    return 0.005 / s;
}

// Integrates over [0, t_end] in equal steps no longer than dt; records every `record_stride` steps and the end point.
inline Trajectory integrate(const Matrix& H, const std::vector<Matrix>& L, const Matrix& rho0, double t_end, double dt,
                            const IntegrateOptions& opt = {}) {
    const Eigen::Index d = rho0.rows();
    require_square(rho0, d, "integrate (rho0)");
    require_square(H, d, "integrate (H)");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    if (!(t_end >= 0.0)) throw std::invalid_argument("integrate: t_end must be non-negative");
    if (opt.record_stride < 1) throw std::invalid_argument("integrate: record_stride must be >= 1");
    const auto steps = static_cast<long long>(std::ceil(t_end / dt));
    const double h = steps > 0 ? t_end / static_cast<double>(steps) : 0.0;
    const cd tr0 = rho0.trace();

    Trajectory tr;
    tr.t.push_back(0.0);
    tr.rho.push_back(rho0);
    if (steps == 0) return tr;

    Matrix prop;
    if (opt.stepper == Stepper::Exact) prop = (liouvillian(H, L, opt.dissipator) * h).exp();
    Matrix rho = rho0;
    for (long long s = 1; s <= steps; ++s) {
        if (opt.stepper == Stepper::Exact) {
            const Vector v = prop * vectorize(rho);
            rho = unvectorize(v, d);
        } else {
            auto f = [&](const Matrix& r) { return gksl_rhs(H, L, r, opt.dissipator); };
            const Matrix k1 = f(rho);
            const Matrix k2 = f(rho + 0.5 * h * k1);
            const Matrix k3 = f(rho + 0.5 * h * k2);
            const Matrix k4 = f(rho + h * k3);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        const double drift = std::abs(rho.trace() - tr0);
        if (!(drift <= opt.trace_drift_limit))
            throw IntegrationUnstable("integrate: trace drift " + std::to_string(drift) + " at step " + std::to_string(s) +
                                      "; reduce dt");
        if (s % opt.record_stride == 0 || s == steps) {
            tr.t.push_back(h * static_cast<double>(s));
            tr.rho.push_back(rho);
        }
    }
    return tr;
}

struct DensityCheck {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;

    bool valid(double trace_tol = 1e-10, double herm_tol = 1e-10, double eig_tol = 1e-8) const {
        return trace_error <= trace_tol && hermiticity_error <= herm_tol && min_eigenvalue >= -eig_tol;
    }
};

inline DensityCheck check_density(const Matrix& rho) {
    return {std::abs(rho.trace() - 1.0), wstate::hermiticity_error(rho), min_eigenvalue(rho)};
}

// ------------------------------------ full-space models ------------------------------------

struct OracleOptions {
    bool project_drive = true;      // keep only the ground -> single-excitation part of W₊
    int flipped_phase_atom = -1;    // atom whose drive phase is inverted (symmetry-breaking control)
    bool restrict_to_sector = true; // keep only states with at most one excitation
    MemoryBudget budget{};
};

inline constexpr int oracle_max_atoms = 4;

struct OracleSystem {
    SymmetricBasis basis;
    FullSpace fs;
    std::vector<std::uint64_t> states;  // full-space indices of the kept coordinates
    Matrix H;
    std::vector<TaggedOperator> lindblads;
    Matrix embedding;                   // kept coordinates x symmetric labels

    Eigen::Index dim() const { return H.rows(); }
    std::vector<Matrix> lindblad_matrices() const {
        std::vector<Matrix> v;
        for (const auto& l : lindblads) v.push_back(l.op);
        return v;
    }
    Matrix pure_label(int label) const {
        const Vector v = embedding.col(label);
        return projector(v);
    }
};

namespace detail {

inline std::vector<cd> drive_phases(int n, int flipped) {
    if (flipped < 0) return {};
    if (flipped >= n) throw std::out_of_range("flipped_phase_atom outside 0..n-1");
    std::vector<cd> ph(static_cast<std::size_t>(n), 1.0);
    ph[static_cast<std::size_t>(flipped)] = -1.0;
    return ph;
}

// Projector onto full-space states with exactly `k` excitations.
inline Matrix excitation_projector(const FullSpace& fs, int k) {
    const auto d = static_cast<Eigen::Index>(fs.dim());
    Matrix p = Matrix::Zero(d, d);
    for (std::uint64_t i = 0; i < fs.dim(); ++i)
        if (fs.excitations(i) == k) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return p;
}

inline Matrix number_of(const FullSpace& fs, int level) {
    const auto d = static_cast<Eigen::Index>(fs.dim());
    Matrix m = Matrix::Zero(d, d);
    for (std::uint64_t i = 0; i < fs.dim(); ++i)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) =
            static_cast<double>(level == 2 ? fs.atomic_excitations(i) : fs.ones(i));
    return m;
}

inline OracleSystem finish_oracle(const SymmetricBasis& b, const FullSpace& fs, Matrix H,
                                  std::vector<TaggedOperator> lind, const OracleOptions& opt) {
    OracleSystem s{b, fs, {}, {}, {}, {}};
    const Matrix emb = embedding_matrix(b, opt.budget);
    for (std::uint64_t i = 0; i < fs.dim(); ++i)
        if (!opt.restrict_to_sector || fs.excitations(i) <= 1) s.states.push_back(i);
    std::vector<int> keep(s.states.begin(), s.states.end());
    std::vector<int> all_labels;
    for (int i = 0; i < static_cast<int>(b.size()); ++i) all_labels.push_back(i);
    s.H = submatrix(H, keep, keep);
    for (auto& l : lind) s.lindblads.push_back({l.parent, l.part, submatrix(l.op, keep, keep)});
    s.embedding = submatrix(emb, keep, all_labels);
    return s;
}

inline Matrix drive_operator(const FullSpace& fs, const Matrix& single, double amplitude, const OracleOptions& opt) {
    Matrix w = amplitude * Matrix(full_atom_operator(fs, single, drive_phases(fs.n, opt.flipped_phase_atom), opt.budget));
    if (opt.project_drive) w = excitation_projector(fs, 1) * w * excitation_projector(fs, 0);
    return w;
}

inline void require_oracle_size(int n) {
    if (n < 1 || n > oracle_max_atoms)
        throw BudgetExceeded("oracle: full-space integration is capped at n <= " + std::to_string(oracle_max_atoms));
}

}  // namespace detail

// H = Δ N_e + δ a†a + g(a† U₊ + a U₋) + W₊ + W₋ with W₊ = (Ω/2) V₋;
// Lindblads √κ a, √(γ/2) V₊, √(γ/2) U₊.
inline OracleSystem build_oracle_single(const SchemeParams& p, const OracleOptions& opt = {}) {
    p.validate();
    detail::require_oracle_size(p.n);
    const FullSpace fs{p.n, 1};
    check_budget(fs.dim(), opt.budget, "build_oracle_single");
    const Matrix a = Matrix(annihilation(fs, 1, opt.budget));
    const Matrix up = Matrix(full_atom_operator(fs, FSpin::UPlus, opt.budget));
    const Matrix vp = Matrix(full_atom_operator(fs, FSpin::VPlus, opt.budget));
    const Matrix wp = detail::drive_operator(fs, f_spin(FSpin::VMinus), 0.5 * p.Omega, opt);
    Matrix H = p.Delta * detail::number_of(fs, 2) + p.delta * (a.adjoint() * a) + p.g * (a.adjoint() * up) +
               p.g * (a * up.adjoint()) + wp + wp.adjoint();
    std::vector<TaggedOperator> lind = {{"kappa", "", std::sqrt(p.kappa) * a},
                                        {"gamma0", "", std::sqrt(0.5 * p.gamma) * vp},
                                        {"gamma1", "", std::sqrt(0.5 * p.gamma) * up}};
    return detail::finish_oracle(symmetric_basis(p.n, 1), fs, std::move(H), std::move(lind), opt);
}

// H = Δ₂N₁ + Δ₁N_e + δ₁a₁†a₁ + δ₂a₂†a₂ + g₁(a₁†V₊ + h.c.) + g₂(a₂†U₊ + h.c.) + W with
// W₊ = (Ω₁/2)V₋ + (Ω₂/2)U₋; Lindblads √κ₁a₁, √κ₂a₂, √(γ/2)U₊, √(γ/2)V₊.
inline OracleSystem build_oracle_bimodal(const BimodalParams& p, const OracleOptions& opt = {}) {
    p.validate();
    detail::require_oracle_size(p.n);
    const FullSpace fs{p.n, 2};
    check_budget(fs.dim(), opt.budget, "build_oracle_bimodal");
    const Matrix a1 = Matrix(annihilation(fs, 1, opt.budget));
    const Matrix a2 = Matrix(annihilation(fs, 2, opt.budget));
    const Matrix up = Matrix(full_atom_operator(fs, FSpin::UPlus, opt.budget));
    const Matrix vp = Matrix(full_atom_operator(fs, FSpin::VPlus, opt.budget));
    const Matrix wp = detail::drive_operator(fs, f_spin(FSpin::VMinus), 0.5 * p.Omega1, opt) +
                      detail::drive_operator(fs, f_spin(FSpin::UMinus), 0.5 * p.Omega2, opt);
    Matrix H = p.Delta2 * detail::number_of(fs, 1) + p.Delta1 * detail::number_of(fs, 2) +
               p.delta1 * (a1.adjoint() * a1) + p.delta2 * (a2.adjoint() * a2) + p.g1 * (a1.adjoint() * vp) +
               p.g1 * (a1 * vp.adjoint()) + p.g2 * (a2.adjoint() * up) + p.g2 * (a2 * up.adjoint()) + wp + wp.adjoint();
    std::vector<TaggedOperator> lind = {{"kappa1", "", std::sqrt(p.kappa1) * a1},
                                        {"kappa2", "", std::sqrt(p.kappa2) * a2},
                                        {"gamma1", "", std::sqrt(0.5 * p.gamma) * up},
                                        {"gamma0", "", std::sqrt(0.5 * p.gamma) * vp}};
    return detail::finish_oracle(symmetric_basis(p.n, 2), fs, std::move(H), std::move(lind), opt);
}

// tr((I − P)ρ) with P the projector onto the embedded symmetric labels.
inline double leakage(const Matrix& rho, const OracleSystem& s) {
    require_square(rho, s.dim(), "leakage");
    return std::real(rho.trace() - (s.embedding.adjoint() * rho * s.embedding).trace());
}

inline double subspace_leakage(const Trajectory& tr, const OracleSystem& s) {
    double m = 0.0;
    for (const auto& r : tr.rho) m = std::max(m, leakage(r, s));
    return m;
}

inline std::vector<double> label_populations(const Matrix& rho, const OracleSystem& s) {
    require_square(rho, s.dim(), "label_populations");
    std::vector<double> v;
    for (Eigen::Index i = 0; i < s.embedding.cols(); ++i)
        v.push_back(std::real(s.embedding.col(i).dot(rho * s.embedding.col(i))));
    return v;
}

inline Eigen::VectorXd ground_populations(const Matrix& rho, const OracleSystem& s) {
    const auto all = label_populations(rho, s);
    Eigen::VectorXd g(s.basis.n() + 1);
    for (int j = 0; j <= s.basis.n(); ++j) g(j) = all[static_cast<std::size_t>(s.basis.ground(j))];
    return g;
}

// Population in states with two or more excitations (weak-driving truncation monitor).
inline double multi_excitation_population(const Matrix& rho, const OracleSystem& s) {
    require_square(rho, s.dim(), "multi_excitation_population");
    double p = 0.0;
    for (std::size_t k = 0; k < s.states.size(); ++k)
        if (s.fs.excitations(s.states[k]) >= 2) p += std::real(rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
    return p;
}

// ------------------------------------ comparisons ------------------------------------

struct PopulationComparison {
    double max_deviation = 0.0;      // max over t, j of |ρ_jj(full) − ρ_j(chain)|
    double t_end = 0.0;
    double max_leakage = 0.0;
    double min_eigenvalue = 0.0;
    std::vector<double> t;
    std::vector<Eigen::VectorXd> full, chain;
};

inline PopulationComparison compare_with_chain(const OracleSystem& s, const RateChain& chain, int initial, double t_end,
                                               int steps, const IntegrateOptions& opt = {}) {
    if (steps < 1) throw std::invalid_argument("compare_with_chain: steps must be >= 1");
    if (chain.n != s.basis.n()) throw std::invalid_argument("compare_with_chain: chain size differs from the oracle");
    PopulationComparison c;
    c.t_end = t_end;
    const Trajectory tr = integrate(s.H, s.lindblad_matrices(), s.pure_label(s.basis.ground(initial)), t_end,
                                    t_end / steps, opt);
    const auto pops = solve_chain_numeric(chain, basis_distribution(chain.n, initial), tr.t);
    c.min_eigenvalue = 1.0;
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
        const Eigen::VectorXd g = ground_populations(tr.rho[k], s);
        c.max_deviation = std::max(c.max_deviation, (g - pops[k]).cwiseAbs().maxCoeff());
        c.max_leakage = std::max(c.max_leakage, leakage(tr.rho[k], s));
        c.min_eigenvalue = std::min(c.min_eigenvalue, min_eigenvalue(tr.rho[k]));
        c.t.push_back(tr.t[k]);
        c.full.push_back(g);
        c.chain.push_back(pops[k]);
    }
    return c;
}

}  // namespace wstate
