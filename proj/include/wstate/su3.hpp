// su3.hpp: Gell-Mann generators, F-spin shift operators, collective n-atom operators, multiplet counting

#pragma once

#include "linalg.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wstate {

// Single-atom level order: 0 = |0>, 1 = |1>, 2 = |e>.
enum class Level : int { Zero = 0, One = 1, Excited = 2 };

enum class FSpin { TPlus, TMinus, UPlus, UMinus, VPlus, VMinus, T3, Y };

inline constexpr std::array<FSpin, 8> all_fspin = {FSpin::TPlus, FSpin::TMinus, FSpin::UPlus, FSpin::UMinus,
                                                   FSpin::VPlus, FSpin::VMinus, FSpin::T3,    FSpin::Y};

inline std::string_view fspin_name(FSpin f) {
    switch (f) {
        case FSpin::TPlus: return "T+";
        case FSpin::TMinus: return "T-";
        case FSpin::UPlus: return "U+";
        case FSpin::UMinus: return "U-";
        case FSpin::VPlus: return "V+";
        case FSpin::VMinus: return "V-";
        case FSpin::T3: return "T3";
        case FSpin::Y: return "Y";
    }
    return "?";
}

inline FSpin parse_fspin(std::string_view name) {
    for (FSpin f : all_fspin)
        if (fspin_name(f) == name) return f;
    throw std::invalid_argument("unknown F-spin operator '" + std::string(name) + "'");
}

inline Matrix gell_mann(int i) {
    if (i < 1 || i > 8) throw std::out_of_range("gell_mann: index " + std::to_string(i) + " outside 1..8");
    Matrix m = Matrix::Zero(3, 3);
    switch (i) {
        case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 2: m(0, 1) = -I_unit; m(1, 0) = I_unit; break;
        case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        case 4: m(0, 2) = 1.0; m(2, 0) = 1.0; break;
        case 5: m(0, 2) = -I_unit; m(2, 0) = I_unit; break;
        case 6: m(1, 2) = 1.0; m(2, 1) = 1.0; break;
        case 7: m(1, 2) = -I_unit; m(2, 1) = I_unit; break;
        case 8: {
            const double s = 1.0 / std::sqrt(3.0);
            m(0, 0) = s; m(1, 1) = s; m(2, 2) = -2.0 * s;
            break;
        }
    }
    return m;
}

inline Matrix f_generator(int i) { return 0.5 * gell_mann(i); }

inline Matrix f_spin(FSpin f) {
    switch (f) {
        case FSpin::TPlus: return f_generator(1) + I_unit * f_generator(2);
        case FSpin::TMinus: return f_generator(1) - I_unit * f_generator(2);
        case FSpin::VPlus: return f_generator(4) + I_unit * f_generator(5);
        case FSpin::VMinus: return f_generator(4) - I_unit * f_generator(5);
        case FSpin::UPlus: return f_generator(6) + I_unit * f_generator(7);
        case FSpin::UMinus: return f_generator(6) - I_unit * f_generator(7);
        case FSpin::T3: return f_generator(3);
        case FSpin::Y: return (2.0 / std::sqrt(3.0)) * f_generator(8);
    }
    throw std::invalid_argument("f_spin: bad operator");
}

inline Matrix f_spin(std::string_view name) { return f_spin(parse_fspin(name)); }

// Non-vanishing f_ijk up to antisymmetric permutation.
inline double structure_constant(int i, int j, int k) {
    for (int x : {i, j, k})
        if (x < 1 || x > 8) throw std::out_of_range("structure_constant: index outside 1..8");
    struct Entry { int a, b, c; double v; };
    static const Entry table[] = {
        {1, 2, 3, 1.0},  {1, 4, 7, 0.5}, {1, 5, 6, -0.5}, {2, 4, 6, 0.5},
        {2, 5, 7, 0.5},  {3, 4, 5, 0.5}, {3, 6, 7, -0.5}, {4, 5, 8, 0.8660254037844386},
        {6, 7, 8, 0.8660254037844386},
    };
    std::array<int, 3> idx{i, j, k};
    int sign = 1;
    // bubble sort, tracking permutation parity
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 2 - p; ++q)
            if (idx[q] > idx[q + 1]) { std::swap(idx[q], idx[q + 1]); sign = -sign; }
    if (idx[0] == idx[1] || idx[1] == idx[2]) return 0.0;
    for (const auto& e : table)
        if (e.a == idx[0] && e.b == idx[1] && e.c == idx[2]) return sign * e.v;
    return 0.0;
}

// ----------------------------- collective operators ------------------------------

class BudgetExceeded : public std::length_error {
  public:
    using std::length_error::length_error;
};

struct MemoryBudget {
    std::uint64_t max_dimension = 531441;  // 3^12
};

inline std::uint64_t atom_space_dimension(int n) { return ipow(3, n); }

inline void check_budget(std::uint64_t dim, const MemoryBudget& budget, const char* what) {
    if (dim > budget.max_dimension)
        throw BudgetExceeded(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds budget " +
                             std::to_string(budget.max_dimension));
}

// Level of atom `a` (0 = leftmost factor, most significant base-3 digit) in basis index `idx`.
inline int atom_level(std::uint64_t idx, int a, int n) { return static_cast<int>((idx / ipow(3, n - 1 - a)) % 3); }

// Σ_i O_i with O acting on atom i; `phases[i]` multiplies the i-th term when given.
inline SparseMatrix embed_single_atom_sum(const Matrix& op, int n, const std::vector<cd>& phases = {},
                                          const MemoryBudget& budget = {}) {
    if (n < 1) throw std::invalid_argument("collective operator: n must be >= 1");
    if (op.rows() != 3 || op.cols() != 3) throw std::invalid_argument("collective operator: need a 3x3 operator");
    if (!phases.empty() && static_cast<int>(phases.size()) != n)
        throw std::invalid_argument("collective operator: phase list size differs from n");
    const std::uint64_t dim = atom_space_dimension(n);
    check_budget(dim, budget, "collective_operator");
    std::vector<Eigen::Triplet<cd>> trip;
    trip.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(n));
    for (std::uint64_t col = 0; col < dim; ++col) {
        for (int a = 0; a < n; ++a) {
            const std::uint64_t stride = ipow(3, n - 1 - a);
            const int from = atom_level(col, a, n);
            for (int to = 0; to < 3; ++to) {
                cd v = op(to, from);
                if (v == cd(0.0)) continue;
                if (!phases.empty()) v *= phases[static_cast<std::size_t>(a)];
                const std::uint64_t row = col - static_cast<std::uint64_t>(from) * stride +
                                          static_cast<std::uint64_t>(to) * stride;
                trip.emplace_back(static_cast<int>(row), static_cast<int>(col), v);
            }
        }
    }
    SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

inline SparseMatrix collective_operator(FSpin f, int n, const MemoryBudget& budget = {}) {
    return embed_single_atom_sum(f_spin(f), n, {}, budget);
}

inline SparseMatrix collective_operator(std::string_view name, int n, const MemoryBudget& budget = {}) {
    return collective_operator(parse_fspin(name), n, budget);
}

// ------------------------------ multiplet counting -------------------------------

struct MultipletLabel {
    int p = 0;
    int q = 0;
};

inline std::uint64_t multiplet_dimension(MultipletLabel m) {
    if (m.p < 0 || m.q < 0) throw std::invalid_argument("multiplet_dimension: p, q must be non-negative");
    const auto p = static_cast<std::uint64_t>(m.p), q = static_cast<std::uint64_t>(m.q);
    return (p + 1) * (q + 1) * (p + q + 2) / 2;
}

// Ground row plus first atomic-excitation row of the (p, 0) multiplet.
inline std::uint64_t single_excitation_count(int p) {
    if (p < 1) throw std::invalid_argument("single_excitation_count: p must be >= 1");
    return 2 * static_cast<std::uint64_t>(p) + 1;
}

// States of the (n,0) multiplet, rows indexed by atomic-excitation number k:
// row k starts at (V-)^k |0...0> and continues with repeated T- until it vanishes.
struct MultipletWalk {
    int n = 0;
    std::vector<std::vector<Vector>> rows;

    std::size_t size() const {
        std::size_t s = 0;
        for (const auto& r : rows) s += r.size();
        return s;
    }
};

inline MultipletWalk symmetric_multiplet_walk(int n, const MemoryBudget& budget = {}, double zero_tol = 1e-12) {
    const SparseMatrix vm = collective_operator(FSpin::VMinus, n, budget);
    const SparseMatrix tm = collective_operator(FSpin::TMinus, n, budget);
    const auto dim = static_cast<Eigen::Index>(atom_space_dimension(n));
    MultipletWalk walk;
    walk.n = n;
    Vector top = Vector::Zero(dim);
    top(0) = 1.0;  // |0...0>, the maximal-weight symmetric state
    Vector edge = top;
    while (edge.norm() > zero_tol) {
        std::vector<Vector> row;
        Vector s = edge.normalized();
        while (s.norm() > zero_tol) {
            row.push_back(s.normalized());
            s = (tm * row.back()).eval();
        }
        walk.rows.push_back(std::move(row));
        edge = (vm * edge.normalized()).eval();
    }
    return walk;
}

}  // namespace wstate
