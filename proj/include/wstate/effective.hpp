// effective.hpp: effective ground-state Hamiltonian and Lindblad operators, generic and closed form

#pragma once

#include "model.hpp"

#include <Eigen/LU>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wstate {

// Operators act on the n+1 ground labels |0>..|n>.
struct EffectiveModel {
    Matrix H_eff;
    std::vector<TaggedOperator> L_eff;

    const TaggedOperator* find(const std::string& name) const {
        for (const auto& l : L_eff)
            if (l.name() == name) return &l;
        return nullptr;
    }
};

class SingularPropagator : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline bool channel_is_zero(const TaggedOperator& l) { return l.op.size() == 0 || l.op.cwiseAbs().maxCoeff() == 0.0; }

// H_eff = −½ W₋ (H_NH⁻¹ + H_NH⁻†) W₊ + H_g and L_eff^k = L_k H_NH⁻¹ W₊.
// With split_drives, one operator per (channel, drive part) using that part of W₊ only.
// Channels whose Lindblad operator is identically zero are omitted.
inline EffectiveModel effective_model_generic(const ModelBundle& m, bool split_drives = false) {
    const auto g = m.basis.ground_indices();
    const auto ex = m.basis.excited_indices();
    const Matrix hnh = h_nh(m);
    Eigen::PartialPivLU<Matrix> lu(hnh);
    const double rc = lu.rcond();
    if (!(rc > singular_rcond)) throw SingularPropagator("effective_model_generic: H_NH is singular (rcond " + std::to_string(rc) + ")");
    const Matrix hinv = lu.inverse();

    const Matrix wp = submatrix(m.W_plus, ex, g);
    const Matrix wm = submatrix(m.W_minus, g, ex);
    EffectiveModel out;
    out.H_eff = -0.5 * wm * (hinv + hinv.adjoint()) * wp + submatrix(m.H_g, g, g);
    for (const auto& l : m.lindblads) {
        if (channel_is_zero(l)) continue;
        const Matrix lg = submatrix(l.op, g, ex);
        if (!split_drives) {
            out.L_eff.push_back({l.parent, "", lg * hinv * wp});
        } else {
            for (const auto& d : m.drives) out.L_eff.push_back({l.parent, d.tag, lg * hinv * submatrix(d.W_plus, ex, g)});
        }
    }
    return out;
}

// ------------------------------------ single mode ------------------------------------

// d_j = (Δ − iγ(n+1)/4)(2δ − iκ) − 2(j+1)g²
inline cd single_mode_dj(const SchemeParams& p, int j) {
    const double n1 = p.n + 1.0;
    return (p.Delta - I_unit * p.gamma * n1 / 4.0) * (2.0 * p.delta - I_unit * p.kappa) - 2.0 * (j + 1.0) * p.g * p.g;
}

inline void require_nonzero_dj(cd d, int j) {
    if (d == cd(0.0)) throw SingularPropagator("vanishing propagator denominator d_" + std::to_string(j));
}

// Closed-form inverse blocks Â (cavity), B̂ (cavity <- atomic), D̂ (atomic) in the partition layout of model.hpp.
inline InverseBlocks single_mode_inverse_closed_form(const SchemeParams& p) {
    p.validate();
    const int n = p.n;
    const cd datom = p.Delta - I_unit * p.gamma * (n + 1.0) / 4.0;
    const cd twod = 2.0 * p.delta - I_unit * p.kappa;
    InverseBlocks out;
    out.A = Matrix::Zero(n + 1, n + 1);
    out.B = Matrix::Zero(n + 1, n);
    out.D = Matrix::Zero(n, n);
    out.A(0, 0) = 2.0 / twod;
    for (int j = 1; j <= n; ++j) {
        const cd d = single_mode_dj(p, j - 1);
        require_nonzero_dj(d, j - 1);
        out.A(j, j) = 2.0 * datom / d;
        out.B(j, j - 1) = -2.0 * p.g * std::sqrt(static_cast<double>(j)) / d;
    }
    for (int j = 0; j < n; ++j) out.D(j, j) = twod / single_mode_dj(p, j);
    out.C = out.B.transpose();
    out.rcond_A = out.rcond_schur = 1.0;
    return out;
}

inline cd single_mode_f(const SchemeParams& p, int j) {
    const cd d = single_mode_dj(p, j);
    const cd twod = 2.0 * p.delta - I_unit * p.kappa;
    return (twod * std::conj(d) + std::conj(twod) * d) / std::norm(d);
}

inline EffectiveModel closed_form_single_mode(const SchemeParams& p) {
    p.validate();
    const int n = p.n;
    const cd twod = 2.0 * p.delta - I_unit * p.kappa;
    const cd pre = twod * p.Omega * std::sqrt(p.gamma) / (2.0 * std::sqrt(2.0));
    Matrix l1 = Matrix::Zero(n + 1, n + 1), l2 = l1, l3 = l1, h = l1;
    for (int j = 0; j < n; ++j) {
        const cd d = single_mode_dj(p, j);
        require_nonzero_dj(d, j);
        const double s = std::sqrt((j + 1.0) * (n - j));
        l1(j + 1, j) = -p.g * p.Omega * std::sqrt(p.kappa) * s / d;
        l2(j, j) = pre * static_cast<double>(n - j) / d;
        l3(j + 1, j) = pre * s / d;
        h(j, j) = -(p.Omega * p.Omega / 8.0) * single_mode_f(p, j) * static_cast<double>(n - j);
    }
    EffectiveModel out;
    out.H_eff = h;
    if (p.kappa != 0.0) out.L_eff.push_back({"kappa", "", l1});
    if (p.gamma != 0.0) {
        out.L_eff.push_back({"gamma0", "", l2});
        out.L_eff.push_back({"gamma1", "", l3});
    }
    return out;
}

// T_j = (j+1)(n−j)/|d_j|² · Ω²(g²κ + γ(4δ² + κ²)/8)
inline double single_mode_rate_formula(const SchemeParams& p, int j) {
    if (j < 0 || j >= p.n) return 0.0;
    const double m = (j + 1.0) * (p.n - j);
    return m / std::norm(single_mode_dj(p, j)) * p.Omega * p.Omega *
           (p.g * p.g * p.kappa + p.gamma * (4.0 * p.delta * p.delta + p.kappa * p.kappa) / 8.0);
}

// ------------------------------------- bimodal --------------------------------------

// α_j^(k) = 2(δ_k + jΔ₂) − iκ_k
inline cd bimodal_alpha(const BimodalParams& p, int k, int j) {
    if (k == 1) return 2.0 * (p.delta1 + j * p.Delta2) - I_unit * p.kappa1;
    if (k == 2) return 2.0 * (p.delta2 + j * p.Delta2) - I_unit * p.kappa2;
    throw std::out_of_range("bimodal_alpha: mode must be 1 or 2");
}

// β_j = 4(Δ₁ + jΔ₂) − iγ(n+1)
inline cd bimodal_beta(const BimodalParams& p, int j) {
    return 4.0 * (p.Delta1 + j * p.Delta2) - I_unit * p.gamma * (p.n + 1.0);
}

// d_j = β_j α_j^(1) α_{j+1}^(2) − 8[g₁²(n−j) α_{j+1}^(2) + g₂²(j+1) α_j^(1)]
inline cd bimodal_dj(const BimodalParams& p, int j) {
    const cd a1 = bimodal_alpha(p, 1, j), a2 = bimodal_alpha(p, 2, j + 1);
    return bimodal_beta(p, j) * a1 * a2 - 8.0 * (p.g1 * p.g1 * (p.n - j) * a2 + p.g2 * p.g2 * (j + 1.0) * a1);
}

// c₁(k) = −4√κ₁ Ω_k g₁, c₂(k) = −4√κ₂ Ω_k g₂, c₃(k) = √2 √γ Ω_k
inline double bimodal_c(const BimodalParams& p, int i, int k) {
    const double om = k == 1 ? p.Omega1 : p.Omega2;
    switch (i) {
        case 1: return -4.0 * std::sqrt(p.kappa1) * om * p.g1;
        case 2: return -4.0 * std::sqrt(p.kappa2) * om * p.g2;
        case 3: return std::sqrt(2.0) * std::sqrt(p.gamma) * om;
    }
    throw std::out_of_range("bimodal_c: index must be 1..3");
}

// Atomic-block propagator D̂_j = 4 α_j^(1) α_{j+1}^(2) / d_j.
inline cd bimodal_dhat(const BimodalParams& p, int j) {
    const cd d = bimodal_dj(p, j);
    require_nonzero_dj(d, j);
    return 4.0 * bimodal_alpha(p, 1, j) * bimodal_alpha(p, 2, j + 1) / d;
}

// Eight drive-resolved operators L^{i(a)}, L^{i(b)} (a: Ω₁, b: Ω₂) tagged with their channel.
inline EffectiveModel closed_form_bimodal(const BimodalParams& p) {
    p.validate();
    const int n = p.n;
    const Eigen::Index N = n + 1;
    Matrix l1a = Matrix::Zero(N, N), l1b = l1a, l2a = l1a, l2b = l1a, l3a = l1a, l3b = l1a, l4a = l1a, l4b = l1a;
    Matrix h = Matrix::Zero(N, N);
    for (int j = 0; j < n; ++j) {
        const cd d = bimodal_dj(p, j);
        require_nonzero_dj(d, j);
        const cd a1 = bimodal_alpha(p, 1, j), a2 = bimodal_alpha(p, 2, j + 1);
        const double nj = n - j, j1 = j + 1.0, s = std::sqrt(nj * j1);
        l1a(j, j) = bimodal_c(p, 1, 1) * nj * a2 / d;
        l1b(j, j + 1) = bimodal_c(p, 1, 2) * s * a2 / d;
        l2a(j + 1, j) = bimodal_c(p, 2, 1) * s * a1 / d;
        l2b(j + 1, j + 1) = bimodal_c(p, 2, 2) * j1 * a1 / d;
        l3a(j + 1, j) = bimodal_c(p, 3, 1) * s * a1 * a2 / d;
        l3b(j + 1, j + 1) = bimodal_c(p, 3, 2) * j1 * a1 * a2 / d;
        l4a(j, j) = bimodal_c(p, 3, 1) * nj * a1 * a2 / d;
        l4b(j, j + 1) = bimodal_c(p, 3, 2) * s * a1 * a2 / d;

        const double re = std::real(bimodal_dhat(p, j));
        h(j, j) -= 0.25 * p.Omega1 * p.Omega1 * nj * re;
        h(j + 1, j + 1) -= 0.25 * p.Omega2 * p.Omega2 * j1 * re;
        h(j, j + 1) -= 0.25 * p.Omega1 * p.Omega2 * s * re;
        h(j + 1, j) -= 0.25 * p.Omega1 * p.Omega2 * s * re;
    }
    for (int j = 0; j <= n; ++j) h(j, j) += j * p.Delta2;

    EffectiveModel out;
    out.H_eff = h;
    if (p.kappa1 != 0.0) {
        out.L_eff.push_back({"kappa1", "a", l1a});
        out.L_eff.push_back({"kappa1", "b", l1b});
    }
    if (p.kappa2 != 0.0) {
        out.L_eff.push_back({"kappa2", "a", l2a});
        out.L_eff.push_back({"kappa2", "b", l2b});
    }
    if (p.gamma != 0.0) {
        out.L_eff.push_back({"gamma1", "a", l3a});
        out.L_eff.push_back({"gamma1", "b", l3b});
        out.L_eff.push_back({"gamma0", "a", l4a});
        out.L_eff.push_back({"gamma0", "b", l4b});
    }
    return out;
}

// Forward (Ω₂ = 0) and reverse (Ω₁ = 0) rate formulas with Δ₂ = 0.
inline double bimodal_forward_rate_formula(const BimodalParams& p, int j) {
    if (j < 0 || j >= p.n) return 0.0;
    const double h = (p.n - j) * (j + 1.0) / std::norm(bimodal_dj(p, j));
    return h * p.Omega1 * p.Omega1 * std::norm(bimodal_alpha(p, 1, j)) *
           (16.0 * p.kappa2 * p.g2 * p.g2 + 2.0 * p.gamma * std::norm(bimodal_alpha(p, 2, j + 1)));
}

inline double bimodal_reverse_rate_formula(const BimodalParams& p, int j) {
    if (j < 0 || j >= p.n) return 0.0;
    const double h = (p.n - j) * (j + 1.0) / std::norm(bimodal_dj(p, j));
    return h * p.Omega2 * p.Omega2 * std::norm(bimodal_alpha(p, 2, j + 1)) *
           (16.0 * p.kappa1 * p.g1 * p.g1 + 2.0 * p.gamma * std::norm(bimodal_alpha(p, 1, j)));
}

// Largest entrywise difference between two effective models with matching operator names.
inline double max_model_difference(const EffectiveModel& a, const EffectiveModel& b) {
    double e = max_abs_diff(a.H_eff, b.H_eff);
    if (a.L_eff.size() != b.L_eff.size()) throw std::invalid_argument("max_model_difference: operator count differs");
    for (const auto& la : a.L_eff) {
        const TaggedOperator* lb = b.find(la.name());
        if (!lb) throw std::invalid_argument("max_model_difference: no operator named " + la.name());
        e = std::max(e, max_abs_diff(la.op, lb->op));
    }
    return e;
}

}  // namespace wstate
