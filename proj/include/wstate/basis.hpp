// basis.hpp: labelled symmetric single-excitation basis and its embedding into the tensor-product space

#pragma once

#include "linalg.hpp"
#include "su3.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wstate {

enum class LabelKind { Ground, AtomicExc, CavityExc };

inline std::string_view label_kind_name(LabelKind k) {
    switch (k) {
        case LabelKind::Ground: return "ground";
        case LabelKind::AtomicExc: return "atomic";
        case LabelKind::CavityExc: return "cavity";
    }
    return "?";
}

// mode is 0 for Ground/AtomicExc and 1 or 2 for CavityExc.
struct BasisLabel {
    LabelKind kind = LabelKind::Ground;
    int j = 0;
    int mode = 0;

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

inline std::string to_string(const BasisLabel& l) {
    switch (l.kind) {
        case LabelKind::Ground: return "|" + std::to_string(l.j) + ">";
        case LabelKind::AtomicExc: return "|e(" + std::to_string(l.j) + ")>";
        case LabelKind::CavityExc:
            return "|" + std::to_string(l.j) + "_c" + (l.mode == 2 ? std::string("2") : std::string("1")) + ">";
    }
    return "?";
}

// norm = sqrt(numerator / denominator)
struct NormFraction {
    std::uint64_t numerator = 1;
    std::uint64_t denominator = 1;

    double value() const { return std::sqrt(static_cast<double>(numerator) / static_cast<double>(denominator)); }
};

class SymmetricBasis {
  public:
    SymmetricBasis(int n, int mode_count) : n_(n), modes_(mode_count) {
        if (n < 1) throw std::invalid_argument("symmetric_basis: n must be >= 1");
        if (mode_count != 1 && mode_count != 2)
            throw std::invalid_argument("symmetric_basis: mode_count must be 1 or 2");
        for (int j = 0; j <= n; ++j) labels_.push_back({LabelKind::Ground, j, 0});
        for (int j = 0; j < n; ++j) labels_.push_back({LabelKind::AtomicExc, j, 0});
        for (int m = 1; m <= mode_count; ++m)
            for (int j = 0; j <= n; ++j) labels_.push_back({LabelKind::CavityExc, j, m});
    }

    int n() const { return n_; }
    int mode_count() const { return modes_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<BasisLabel>& labels() const { return labels_; }
    const BasisLabel& label(std::size_t i) const { return labels_.at(i); }

    int ground(int j) const { return checked(j, n_, "ground"), j; }
    int atomic(int j) const { return checked(j, n_ - 1, "atomic"), n_ + 1 + j; }
    int cavity(int mode, int j) const {
        if (mode < 1 || mode > modes_) throw std::out_of_range("cavity mode out of range");
        checked(j, n_, "cavity");
        return (2 * n_ + 1) + (mode - 1) * (n_ + 1) + j;
    }

    std::optional<std::size_t> index_of(const BasisLabel& l) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == l) return i;
        return std::nullopt;
    }

    std::vector<int> ground_indices() const { return range(0, n_ + 1); }
    std::vector<int> atomic_indices() const { return range(n_ + 1, 2 * n_ + 1); }
    std::vector<int> cavity_indices() const { return range(2 * n_ + 1, static_cast<int>(labels_.size())); }
    // Excited labels in basis order: atomic, then cavity mode 1, then mode 2.
    std::vector<int> excited_indices() const { return range(n_ + 1, static_cast<int>(labels_.size())); }

    // Number of product configurations summed in the unnormalised label state.
    std::uint64_t configuration_count(std::size_t i) const {
        const BasisLabel& l = label(i);
        if (l.kind == LabelKind::AtomicExc) return static_cast<std::uint64_t>(n_) * binomial(n_ - 1, l.j);
        return binomial(n_, l.j);
    }

    NormFraction norm_fraction(std::size_t i) const { return {1, configuration_count(i)}; }
    double norm(std::size_t i) const { return norm_fraction(i).value(); }

  private:
    static std::vector<int> range(int a, int b) {
        std::vector<int> v;
        for (int i = a; i < b; ++i) v.push_back(i);
        return v;
    }
    static void checked(int j, int hi, const char* what) {
        if (j < 0 || j > hi) throw std::out_of_range(std::string(what) + " label j out of range");
    }

    int n_;
    int modes_;
    std::vector<BasisLabel> labels_;
};

inline SymmetricBasis symmetric_basis(int n, int mode_count) { return SymmetricBasis(n, mode_count); }

// ------------------------------- tensor-product space --------------------------------

// Index = atom_index * 2^m + photon bits; atom 0 is the most significant base-3 digit,
// cavity mode 1 the more significant photon bit.
struct FullSpace {
    int n = 1;
    int mode_count = 1;

    std::uint64_t atom_dim() const { return ipow(3, n); }
    std::uint64_t cavity_dim() const { return ipow(2, mode_count); }
    std::uint64_t dim() const { return atom_dim() * cavity_dim(); }

    std::uint64_t index(std::uint64_t atoms, std::uint64_t photons) const { return atoms * cavity_dim() + photons; }
    std::uint64_t photon_bit(int mode) const { return ipow(2, mode_count - mode); }

    int photons_in(std::uint64_t idx, int mode) const {
        return static_cast<int>(((idx % cavity_dim()) / photon_bit(mode)) % 2);
    }
    int atomic_excitations(std::uint64_t idx) const {
        const std::uint64_t a = idx / cavity_dim();
        int c = 0;
        for (int k = 0; k < n; ++k) c += atom_level(a, k, n) == 2;
        return c;
    }
    int ones(std::uint64_t idx) const {
        const std::uint64_t a = idx / cavity_dim();
        int c = 0;
        for (int k = 0; k < n; ++k) c += atom_level(a, k, n) == 1;
        return c;
    }
    int excitations(std::uint64_t idx) const {
        int c = atomic_excitations(idx);
        for (int m = 1; m <= mode_count; ++m) c += photons_in(idx, m);
        return c;
    }
};

inline SparseMatrix kron_identity_right(const SparseMatrix& a, std::uint64_t k) {
    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(static_cast<std::size_t>(a.nonZeros()) * k);
    for (Eigen::Index r = 0; r < a.outerSize(); ++r)
        for (SparseMatrix::InnerIterator it(a, r); it; ++it)
            for (std::uint64_t s = 0; s < k; ++s)
                trip.emplace_back(static_cast<int>(it.row() * k + s), static_cast<int>(it.col() * k + s), it.value());
    const auto d = static_cast<Eigen::Index>(a.rows() * static_cast<Eigen::Index>(k));
    SparseMatrix m(d, d);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

// Collective atomic operator Σ_i s_i O_i ⊗ 1_cavity.
inline SparseMatrix full_atom_operator(const FullSpace& fs, const Matrix& single, const std::vector<cd>& phases = {},
                                       const MemoryBudget& budget = {}) {
    check_budget(fs.dim(), budget, "full_atom_operator");
    return kron_identity_right(embed_single_atom_sum(single, fs.n, phases, budget), fs.cavity_dim());
}

inline SparseMatrix full_atom_operator(const FullSpace& fs, FSpin f, const MemoryBudget& budget = {}) {
    return full_atom_operator(fs, f_spin(f), {}, budget);
}

// Photon annihilation operator of the given mode (1-based), truncated to {0,1} photons.
inline SparseMatrix annihilation(const FullSpace& fs, int mode, const MemoryBudget& budget = {}) {
    if (mode < 1 || mode > fs.mode_count) throw std::out_of_range("annihilation: mode out of range");
    check_budget(fs.dim(), budget, "annihilation");
    std::vector<Eigen::Triplet<cd>> trip;
    const std::uint64_t bit = fs.photon_bit(mode);
    for (std::uint64_t idx = 0; idx < fs.dim(); ++idx)
        if (fs.photons_in(idx, mode) == 1) trip.emplace_back(static_cast<int>(idx - bit), static_cast<int>(idx), 1.0);
    const auto d = static_cast<Eigen::Index>(fs.dim());
    SparseMatrix m(d, d);
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

// Normalised image of basis label `i` in the tensor-product space.
inline Vector embed_symmetric_state(const SymmetricBasis& basis, std::size_t i, const MemoryBudget& budget = {}) {
    const FullSpace fs{basis.n(), basis.mode_count()};
    check_budget(fs.dim(), budget, "embed_symmetric_state");
    const BasisLabel& l = basis.label(i);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(fs.dim()));
    const std::uint64_t photons = l.kind == LabelKind::CavityExc ? fs.photon_bit(l.mode) : 0;
    const int want_e = l.kind == LabelKind::AtomicExc ? 1 : 0;
    for (std::uint64_t a = 0; a < fs.atom_dim(); ++a) {
        int e = 0, ones = 0;
        for (int k = 0; k < fs.n; ++k) {
            const int lv = atom_level(a, k, fs.n);
            e += lv == 2;
            ones += lv == 1;
        }
        if (e == want_e && ones == l.j) v(static_cast<Eigen::Index>(fs.index(a, photons))) = 1.0;
    }
    return v * basis.norm(i);
}

inline Vector embed_symmetric_state(const SymmetricBasis& basis, const BasisLabel& l, const MemoryBudget& budget = {}) {
    auto i = basis.index_of(l);
    if (!i) throw std::invalid_argument("embed_symmetric_state: label not in basis");
    return embed_symmetric_state(basis, *i, budget);
}

// Columns are the embedded basis states, in basis order.
inline Matrix embedding_matrix(const SymmetricBasis& basis, const MemoryBudget& budget = {}) {
    const FullSpace fs{basis.n(), basis.mode_count()};
    check_budget(fs.dim(), budget, "embedding_matrix");
    Matrix e(static_cast<Eigen::Index>(fs.dim()), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) e.col(static_cast<Eigen::Index>(i)) = embed_symmetric_state(basis, i, budget);
    return e;
}

}  // namespace wstate
