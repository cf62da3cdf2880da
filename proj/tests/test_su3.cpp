#include "support.hpp"

#include <gtest/gtest.h>

using namespace wstate;

TEST(GellMann, FirstGeneratorIsPauliX) {
    Matrix e = Matrix::Zero(3, 3);
    e(0, 1) = e(1, 0) = 1.0;
    EXPECT_TRUE(approx_equal(gell_mann(1), e, 0.0));
}

TEST(GellMann, EighthGenerator) {
    Matrix e = Matrix::Zero(3, 3);
    const double s = 1.0 / std::sqrt(3.0);
    e(0, 0) = s;
    e(1, 1) = s;
    e(2, 2) = -2.0 * s;
    EXPECT_TRUE(approx_equal(gell_mann(8), e, 1e-15));
}

TEST(GellMann, HermitianTracelessAndNormalised) {
    for (int i = 1; i <= 8; ++i) {
        const Matrix l = gell_mann(i);
        EXPECT_EQ(hermiticity_error(l), 0.0) << i;
        EXPECT_NEAR(std::abs(l.trace()), 0.0, 1e-15) << i;
        for (int j = 1; j <= 8; ++j)
            EXPECT_NEAR(std::abs((l * gell_mann(j)).trace() - (i == j ? 2.0 : 0.0)), 0.0, 1e-14) << i << "," << j;
    }
}

TEST(GellMann, IndexOutOfRange) {
    EXPECT_THROW(gell_mann(0), std::out_of_range);
    EXPECT_THROW(gell_mann(9), std::out_of_range);
}

TEST(FSpin, ShiftOperatorsAreOuterProducts) {
    auto ket = [](int a, int b) {
        Matrix m = Matrix::Zero(3, 3);
        m(a, b) = 1.0;
        return m;
    };
    EXPECT_TRUE(approx_equal(f_spin("T+"), ket(0, 1), 1e-15));
    EXPECT_TRUE(approx_equal(f_spin("T-"), ket(1, 0), 1e-15));
    EXPECT_TRUE(approx_equal(f_spin("V+"), ket(0, 2), 1e-15));
    EXPECT_TRUE(approx_equal(f_spin("V-"), ket(2, 0), 1e-15));
    EXPECT_TRUE(approx_equal(f_spin("U+"), ket(1, 2), 1e-15));
    EXPECT_TRUE(approx_equal(f_spin("U-"), ket(2, 1), 1e-15));
}

TEST(FSpin, HyperchargeIsDiagonalThirds) {
    const Matrix y = f_spin("Y");
    EXPECT_NEAR(y(0, 0).real(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(y(1, 1).real(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(y(2, 2).real(), -2.0 / 3.0, 1e-15);
}

TEST(FSpin, UnknownName) {
    EXPECT_THROW(f_spin("W+"), std::invalid_argument);
    EXPECT_THROW(collective_operator("X", 2), std::invalid_argument);
}

TEST(FSpin, NamesRoundTrip) {
    for (FSpin f : all_fspin) EXPECT_EQ(parse_fspin(fspin_name(f)), f);
}

TEST(StructureConstants, TableMatchesTraceFormula) {
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j)
            for (int k = 1; k <= 8; ++k)
                EXPECT_NEAR(structure_constant(i, j, k), checks::structure_constant_from_trace(i, j, k), 1e-12)
                    << i << j << k;
}

TEST(StructureConstants, NonzeroValues) {
    EXPECT_DOUBLE_EQ(structure_constant(1, 2, 3), 1.0);
    EXPECT_DOUBLE_EQ(structure_constant(1, 4, 7), 0.5);
    EXPECT_DOUBLE_EQ(structure_constant(1, 5, 6), -0.5);
    EXPECT_NEAR(structure_constant(4, 5, 8), std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_NEAR(structure_constant(8, 6, 7), std::sqrt(3.0) / 2.0, 1e-15);
    EXPECT_DOUBLE_EQ(structure_constant(2, 1, 3), -1.0);
    EXPECT_DOUBLE_EQ(structure_constant(1, 1, 3), 0.0);
}

TEST(StructureConstants, GeneratorAlgebraCloses) {
    // [F_i, F_j] = i f_ijk F_k
    for (int i = 1; i <= 8; ++i)
        for (int j = 1; j <= 8; ++j) {
            Matrix rhs = Matrix::Zero(3, 3);
            for (int k = 1; k <= 8; ++k) rhs += I_unit * structure_constant(i, j, k) * f_generator(k);
            EXPECT_LT(max_abs_diff(commutator(f_generator(i), f_generator(j)), rhs), 1e-14);
        }
}

TEST(StructureConstants, IndexOutOfRange) { EXPECT_THROW(structure_constant(0, 1, 2), std::out_of_range); }

TEST(Commutators, SingleAtom) {
    for (const auto& r : checks::single_atom_relations()) EXPECT_LT(max_abs_diff(r.lhs, r.rhs), 1e-12) << r.name;
}

TEST(Commutators, CollectiveOperatorsForSeveralAtoms) {
    for (int n : {1, 2, 3, 4})
        for (const auto& r : checks::collective_relations(n)) EXPECT_LT(max_abs_diff(r.lhs, r.rhs), 1e-12) << r.name << " n=" << n;
}

TEST(Commutators, PlainF8SumBreaksTheHyperchargeAlgebra) {
    // Σ F_8 (prefactor 1/(2√3) on diag(1,1,-2)) gives [Y, V+] = (√3/2) V+, not V+.
    const int n = 2;
    const Matrix y_f8 = Matrix(embed_single_atom_sum(f_generator(8), n));
    const Matrix vp = Matrix(collective_operator(FSpin::VPlus, n));
    EXPECT_GT(max_abs_diff(commutator(y_f8, vp), vp), 0.1);
    EXPECT_LT(max_abs_diff(commutator(y_f8, vp), (std::sqrt(3.0) / 2.0) * vp), 1e-14);
}

TEST(Collective, DimensionsAndBudget) {
    EXPECT_EQ(collective_operator(FSpin::TPlus, 3).rows(), 27);
    MemoryBudget small{26};
    EXPECT_THROW(collective_operator(FSpin::TPlus, 3, small), BudgetExceeded);
    EXPECT_THROW(collective_operator(FSpin::TPlus, 0), std::invalid_argument);
}

TEST(Collective, TMinusBuildsW) {
    const int n = 3;
    Vector top = Vector::Zero(27);
    top(0) = 1.0;
    const Vector w = Matrix(collective_operator(FSpin::TMinus, n)) * top / std::sqrt(3.0);
    EXPECT_NEAR(w.norm(), 1.0, 1e-15);
    // |001>, |010>, |100> in base 3
    EXPECT_NEAR(std::abs(w(1)), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(std::abs(w(3)), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(std::abs(w(9)), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(Multiplet, Dimensions) {
    EXPECT_EQ(multiplet_dimension({3, 0}), 10u);
    EXPECT_EQ(multiplet_dimension({0, 0}), 1u);
    EXPECT_EQ(multiplet_dimension({1, 1}), 8u);
    EXPECT_EQ(multiplet_dimension({1, 0}), 3u);
    EXPECT_THROW(multiplet_dimension({-1, 0}), std::invalid_argument);
}

TEST(Multiplet, SingleExcitationCount) {
    EXPECT_EQ(single_excitation_count(3), 7u);
    EXPECT_THROW(single_excitation_count(0), std::invalid_argument);
}

TEST(Multiplet, WalkReproducesTriangularMultiplet) {
    for (int n = 1; n <= 5; ++n) {
        const MultipletWalk w = symmetric_multiplet_walk(n);
        EXPECT_EQ(w.size(), multiplet_dimension({n, 0})) << n;
        ASSERT_EQ(static_cast<int>(w.rows.size()), n + 1);
        EXPECT_EQ(w.rows[0].size() + w.rows[1].size(), single_excitation_count(n)) << n;
    }
}

TEST(Multiplet, StatesAreOrthonormal) {
    const MultipletWalk w = symmetric_multiplet_walk(3);
    std::vector<Vector> all;
    for (const auto& r : w.rows)
        for (const auto& v : r) all.push_back(v);
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = 0; b < all.size(); ++b)
            EXPECT_NEAR(std::abs(all[a].dot(all[b])), a == b ? 1.0 : 0.0, 1e-12);
}
