// model.hpp: single-mode and bimodal models in the symmetric basis, H_NH and its partitioned inverse

#pragma once

#include "basis.hpp"
#include "linalg.hpp"
#include "params.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace wstate {

struct TaggedOperator {
    std::string parent;  // dissipation channel, e.g. "kappa", "gamma0"
    std::string part;    // drive tag ("a" for Ω / Ω₁, "b" for Ω₂); empty when not split
    Matrix op;

    std::string name() const { return part.empty() ? parent : parent + "(" + part + ")"; }
};

struct DrivePart {
    std::string tag;
    Matrix W_plus;
};

struct ModelBundle {
    SymmetricBasis basis;
    Matrix H_g, H_e, W_plus, W_minus;
    std::vector<TaggedOperator> lindblads;
    std::vector<DrivePart> drives;  // W_plus = Σ drives[k].W_plus

    Matrix hamiltonian() const { return H_g + H_e + W_plus + W_minus; }
    std::vector<Matrix> lindblad_matrices() const {
        std::vector<Matrix> v;
        for (const auto& l : lindblads) v.push_back(l.op);
        return v;
    }
};

inline Matrix submatrix(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    Matrix s(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(rows[r], cols[c]);
    return s;
}

namespace detail {
inline void set_sym(Matrix& m, int r, int c, cd v) {
    m(r, c) += v;
    m(c, r) += std::conj(v);
}
inline double sq(int k) { return std::sqrt(static_cast<double>(k)); }
}  // namespace detail

inline ModelBundle build_single_mode(const SchemeParams& p, const SymmetricBasis& b) {
    p.validate();
    if (b.mode_count() != 1) throw std::invalid_argument("build_single_mode: basis must have one cavity mode");
    if (b.n() != p.n) throw std::invalid_argument("build_single_mode: basis n differs from params n");
    using detail::sq;
    const int n = p.n;
    const auto N = static_cast<Eigen::Index>(b.size());
    ModelBundle m{b, Matrix::Zero(N, N), Matrix::Zero(N, N), Matrix::Zero(N, N), Matrix::Zero(N, N), {}, {}};
    for (int j = 0; j < n; ++j) {
        m.H_e(b.atomic(j), b.atomic(j)) = p.Delta;
        detail::set_sym(m.H_e, b.cavity(1, j + 1), b.atomic(j), p.g * sq(j + 1));
        m.W_plus(b.atomic(j), b.ground(j)) = 0.5 * p.Omega * sq(n - j);
    }
    for (int j = 0; j <= n; ++j) m.H_e(b.cavity(1, j), b.cavity(1, j)) = p.delta;
    m.W_minus = m.W_plus.adjoint();
    m.drives.push_back({"a", m.W_plus});

    Matrix lk = Matrix::Zero(N, N), l0 = Matrix::Zero(N, N), l1 = Matrix::Zero(N, N);
    for (int j = 0; j <= n; ++j) lk(b.ground(j), b.cavity(1, j)) = std::sqrt(p.kappa);
    for (int j = 0; j < n; ++j) {
        l0(b.ground(j), b.atomic(j)) = std::sqrt(0.5 * p.gamma) * sq(n - j);
        l1(b.ground(j + 1), b.atomic(j)) = std::sqrt(0.5 * p.gamma) * sq(j + 1);
    }
    m.lindblads = {{"kappa", "", lk}, {"gamma0", "", l0}, {"gamma1", "", l1}};
    return m;
}

inline ModelBundle build_single_mode(const SchemeParams& p) { return build_single_mode(p, symmetric_basis(p.n, 1)); }

inline ModelBundle build_bimodal(const BimodalParams& p, const SymmetricBasis& b) {
    p.validate();
    if (b.mode_count() != 2) throw std::invalid_argument("build_bimodal: basis must have two cavity modes");
    if (b.n() != p.n) throw std::invalid_argument("build_bimodal: basis n differs from params n");
    using detail::sq;
    const int n = p.n;
    const auto N = static_cast<Eigen::Index>(b.size());
    ModelBundle m{b, Matrix::Zero(N, N), Matrix::Zero(N, N), Matrix::Zero(N, N), Matrix::Zero(N, N), {}, {}};
    Matrix w1 = Matrix::Zero(N, N), w2 = Matrix::Zero(N, N);
    for (int j = 0; j <= n; ++j) {
        m.H_g(b.ground(j), b.ground(j)) = j * p.Delta2;
        m.H_e(b.cavity(1, j), b.cavity(1, j)) = p.delta1 + j * p.Delta2;
        m.H_e(b.cavity(2, j), b.cavity(2, j)) = p.delta2 + j * p.Delta2;
    }
    for (int j = 0; j < n; ++j) {
        m.H_e(b.atomic(j), b.atomic(j)) = p.Delta1 + j * p.Delta2;
        detail::set_sym(m.H_e, b.cavity(1, j), b.atomic(j), p.g1 * sq(n - j));
        detail::set_sym(m.H_e, b.cavity(2, j + 1), b.atomic(j), p.g2 * sq(j + 1));
        w1(b.atomic(j), b.ground(j)) = 0.5 * p.Omega1 * sq(n - j);
        w2(b.atomic(j), b.ground(j + 1)) = 0.5 * p.Omega2 * sq(j + 1);
    }
    m.W_plus = w1 + w2;
    m.W_minus = m.W_plus.adjoint();
    m.drives = {{"a", w1}, {"b", w2}};

    Matrix l1 = Matrix::Zero(N, N), l2 = Matrix::Zero(N, N), l3 = Matrix::Zero(N, N), l4 = Matrix::Zero(N, N);
    for (int j = 0; j <= n; ++j) {
        l1(b.ground(j), b.cavity(1, j)) = std::sqrt(p.kappa1);
        l2(b.ground(j), b.cavity(2, j)) = std::sqrt(p.kappa2);
    }
    for (int j = 0; j < n; ++j) {
        l3(b.ground(j + 1), b.atomic(j)) = std::sqrt(0.5 * p.gamma) * sq(j + 1);
        l4(b.ground(j), b.atomic(j)) = std::sqrt(0.5 * p.gamma) * sq(n - j);
    }
    m.lindblads = {{"kappa1", "", l1}, {"kappa2", "", l2}, {"gamma1", "", l3}, {"gamma0", "", l4}};
    return m;
}

inline ModelBundle build_bimodal(const BimodalParams& p) { return build_bimodal(p, symmetric_basis(p.n, 2)); }

// H_NH = H_e − (i/2) Σ L†L on the excited labels (basis order: atomic, cavity 1, cavity 2).
inline Matrix h_nh(const ModelBundle& m) {
    Matrix full = m.H_e;
    for (const auto& l : m.lindblads) full -= 0.5 * I_unit * (l.op.adjoint() * l.op);
    const auto ex = m.basis.excited_indices();
    return submatrix(full, ex, ex);
}

// ---------------------------------- partitioned inverse ----------------------------------

class SingularBlock : public std::runtime_error {
  public:
    SingularBlock(const std::string& what, double rcond)
        : std::runtime_error(what + " (reciprocal condition estimate " + std::to_string(rcond) + ")"), rcond_(rcond) {}
    double rcond() const { return rcond_; }

  private:
    double rcond_;
};

inline constexpr double singular_rcond = 1e-14;

// Ã, B̃, C̃, D̃ with Ã the cavity block and D̃ the atomic block; positions index the excited list.
struct PartitionedNH {
    Matrix A, B, C, D;
    std::vector<int> a_pos, d_pos;

    static PartitionedNH from_matrix(const Matrix& m, std::vector<int> a_pos, std::vector<int> d_pos) {
        PartitionedNH p;
        p.A = submatrix(m, a_pos, a_pos);
        p.B = submatrix(m, a_pos, d_pos);
        p.C = submatrix(m, d_pos, a_pos);
        p.D = submatrix(m, d_pos, d_pos);
        p.a_pos = std::move(a_pos);
        p.d_pos = std::move(d_pos);
        return p;
    }

    Eigen::Index dim() const { return static_cast<Eigen::Index>(a_pos.size() + d_pos.size()); }

    Matrix assemble(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) const {
        Matrix m = Matrix::Zero(dim(), dim());
        for (std::size_t r = 0; r < a_pos.size(); ++r) {
            for (std::size_t s = 0; s < a_pos.size(); ++s) m(a_pos[r], a_pos[s]) = a(r, s);
            for (std::size_t s = 0; s < d_pos.size(); ++s) m(a_pos[r], d_pos[s]) = b(r, s);
        }
        for (std::size_t r = 0; r < d_pos.size(); ++r) {
            for (std::size_t s = 0; s < a_pos.size(); ++s) m(d_pos[r], a_pos[s]) = c(r, s);
            for (std::size_t s = 0; s < d_pos.size(); ++s) m(d_pos[r], d_pos[s]) = d(r, s);
        }
        return m;
    }
    Matrix assemble() const { return assemble(A, B, C, D); }
};

inline PartitionedNH partition(const ModelBundle& m) {
    const int n = m.basis.n();
    const int n_ex = static_cast<int>(m.basis.excited_indices().size());
    std::vector<int> a_pos, d_pos;
    for (int k = 0; k < n; ++k) d_pos.push_back(k);
    for (int k = n; k < n_ex; ++k) a_pos.push_back(k);
    return PartitionedNH::from_matrix(h_nh(m), a_pos, d_pos);
}

struct InverseBlocks {
    Matrix A, B, C, D;
    double rcond_A = 0.0;
    double rcond_schur = 0.0;
};

inline InverseBlocks banachiewicz_inverse(const PartitionedNH& p) {
    if (p.A.rows() != p.A.cols() || p.D.rows() != p.D.cols() || p.B.rows() != p.A.rows() ||
        p.B.cols() != p.D.cols() || p.C.rows() != p.D.rows() || p.C.cols() != p.A.cols())
        throw std::invalid_argument("banachiewicz_inverse: inconsistent block dimensions");
    InverseBlocks out;
    Matrix a_inv;
    if (p.A.size() > 0) {
        Eigen::PartialPivLU<Matrix> lu_a(p.A);
        out.rcond_A = lu_a.rcond();
        if (!(out.rcond_A > singular_rcond)) throw SingularBlock("banachiewicz_inverse: singular A block", out.rcond_A);
        a_inv = lu_a.inverse();
    } else {
        a_inv = Matrix::Zero(0, 0);
        out.rcond_A = 1.0;
    }
    const Matrix schur = p.D - p.C * a_inv * p.B;
    if (schur.size() > 0) {
        Eigen::PartialPivLU<Matrix> lu_s(schur);
        out.rcond_schur = lu_s.rcond();
        if (!(out.rcond_schur > singular_rcond))
            throw SingularBlock("banachiewicz_inverse: singular Schur complement", out.rcond_schur);
        out.D = lu_s.inverse();
    } else {
        out.D = Matrix::Zero(0, 0);
        out.rcond_schur = 1.0;
    }
    out.A = a_inv + a_inv * p.B * out.D * p.C * a_inv;
    out.B = -a_inv * p.B * out.D;
    out.C = -out.D * p.C * a_inv;
    return out;
}

inline Matrix assemble_inverse(const PartitionedNH& p, const InverseBlocks& inv) {
    return p.assemble(inv.A, inv.B, inv.C, inv.D);
}

// H_NH⁻¹ over the excited labels via the partitioned formulas.
inline Matrix h_nh_inverse(const ModelBundle& m) {
    const PartitionedNH p = partition(m);
    return assemble_inverse(p, banachiewicz_inverse(p));
}

}  // namespace wstate
