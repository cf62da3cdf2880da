// support.hpp: shared oracles and fixtures for the unit tests and the acceptance runner

#pragma once

#include "wstate/su3.hpp"

#include <string>
#include <vector>

namespace wstate::checks {

// f_ijk = −(i/4) tr([λ_i, λ_j] λ_k), computed from the matrices alone.
inline double structure_constant_from_trace(int i, int j, int k) {
    const cd v = -0.25 * I_unit * (commutator(gell_mann(i), gell_mann(j)) * gell_mann(k)).trace();
    return v.real();
}

struct Relation {
    std::string name;
    Matrix lhs, rhs;
};

// The F-spin commutator list for operators `op(name)` (single atom or collective).
template <class Op>
std::vector<Relation> fspin_relations(Op op) {
    const Matrix Tp = op("T+"), Tm = op("T-"), Up = op("U+"), Um = op("U-"), Vp = op("V+"), Vm = op("V-"),
                 T3 = op("T3"), Y = op("Y");
    const Matrix zero = Matrix::Zero(Tp.rows(), Tp.cols());
    return {
        {"[T3,T+] = T+", commutator(T3, Tp), Tp},
        {"[T3,T-] = -T-", commutator(T3, Tm), -Tm},
        {"[T+,T-] = 2T3", commutator(Tp, Tm), 2.0 * T3},
        {"[T3,U+] = -U+/2", commutator(T3, Up), -0.5 * Up},
        {"[T3,U-] = U-/2", commutator(T3, Um), 0.5 * Um},
        {"[U+,U-] = 3Y/2 - T3", commutator(Up, Um), 1.5 * Y - T3},
        {"[T3,V+] = V+/2", commutator(T3, Vp), 0.5 * Vp},
        {"[T3,V-] = -V-/2", commutator(T3, Vm), -0.5 * Vm},
        {"[V+,V-] = 3Y/2 + T3", commutator(Vp, Vm), 1.5 * Y + T3},
        {"[Y,T+] = 0", commutator(Y, Tp), zero},
        {"[Y,T-] = 0", commutator(Y, Tm), zero},
        {"[Y,U+] = U+", commutator(Y, Up), Up},
        {"[Y,U-] = -U-", commutator(Y, Um), -Um},
        {"[Y,V+] = V+", commutator(Y, Vp), Vp},
        {"[Y,V-] = -V-", commutator(Y, Vm), -Vm},
        {"[T+,V+] = 0", commutator(Tp, Vp), zero},
        {"[T+,U-] = 0", commutator(Tp, Um), zero},
        {"[U+,V+] = 0", commutator(Up, Vp), zero},
        {"[T+,V-] = -U-", commutator(Tp, Vm), -Um},
        {"[T+,U+] = V+", commutator(Tp, Up), Vp},
        {"[U+,V-] = T-", commutator(Up, Vm), Tm},
        {"[T3,Y] = 0", commutator(T3, Y), zero},
    };
}

inline std::vector<Relation> single_atom_relations() {
    return fspin_relations([](const char* name) { return f_spin(name); });
}

inline std::vector<Relation> collective_relations(int n) {
    return fspin_relations([n](const char* name) { return Matrix(collective_operator(name, n)); });
}

}  // namespace wstate::checks
