#include <gtest/gtest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "print.hpp"
#include "cmze/applications.hpp"
#include "cmze/operator_lab.hpp"
#include "cmze/word_equation.hpp"

using namespace cmze;

namespace {

HubbardParams chain(double t, double U, bool periodic = true) {
    HubbardParams p;
    p.sites = 4;
    p.eps0 = 0.7;
    p.mu = 0.2;
    p.t = t;
    p.U = U;
    p.beta = 1.5;
    p.periodic = periodic;
    p.n = {0.3, 0.45, 0.3, 0.45};
    p.nn = {0.1, 0.12, 0.1, 0.12};
    return p;
}

double max_entry(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

} // namespace

TEST(Hubbard, FirstOrderEntries) {
    auto p = chain(0.4, 3);
    EXPECT_EQ(hubbard_a(p, 1, 0, 1), cplx(0, -(0.5 + 3 * 0.45)));
    EXPECT_EQ(hubbard_a(p, 1, 1, 1), cplx(0, -0.4));
    EXPECT_NEAR(std::abs(hubbard_a(p, 2, 2, 0) + 0.16), 0, 1e-15);
    EXPECT_NEAR(std::abs(hubbard_a(p, 2, -2, 3) + 0.16), 0, 1e-15);
    EXPECT_EQ(hubbard_a(p, 1, 2, 0), cplx(0));
    EXPECT_THROW(hubbard_a(p, 4, 0, 0), std::invalid_argument);
}

TEST(Hubbard, FreeAtomicLimit) {
    auto p = chain(0, 0);
    auto D = hubbard_moments_formula(p, 3);
    Mat ref = Mat::Identity(4, 4);
    for (int n = 1; n <= 3; ++n) {
        ref *= cplx(0, -0.5);
        EXPECT_LT(max_entry(D[n] - ref), 1e-15) << n;
    }
}

TEST(Hubbard, ScalarCoefficientsAtHalfShift) {
    auto p = chain(0.4, 3);
    p.eps0 = p.mu;
    auto d = hubbard_scalar_display(p), m = hubbard_scalar_moments(p);
    EXPECT_NEAR(std::abs(d.f0 - m.f0), 0, 1e-12);
    double n = p.dens(0);
    EXPECT_NEAR(d.f0.real(), 9 * (n * n - n) - 2 * 0.16, 1e-12);
    // away from eps0 = mu the displayed f0 carries an extra e U (n - 1)
    auto q = chain(0.4, 3);
    d = hubbard_scalar_display(q), m = hubbard_scalar_moments(q);
    EXPECT_NEAR(std::abs(d.f0 - m.f0), std::abs(q.e() * q.U * (q.dens(0) - 1)), 1e-12);
}

TEST(Hubbard, SpinSymmetry) {
    HubbardED ed(chain(0.4, 3));
    auto up = ed.moments(3, 0), dn = ed.moments(3, 1);
    for (int k = 0; k <= 3; ++k) EXPECT_LT(max_entry(up[k] - dn[k]), 1e-12);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ed.density(i, 0), ed.density(i, 1), 1e-12);
}

TEST(Hubbard, ToeplitzStructure) {
    auto p = chain(0.4, 3);
    p.n = {0.4, 0.4, 0.4, 0.4};
    p.nn = {0.2, 0.2, 0.2, 0.2};
    auto D = hubbard_moments_formula(p, 3);
    for (int k = 1; k <= 3; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) EXPECT_LT(std::abs(D[k](i, j) - D[k]((i + 1) % 4, (j + 1) % 4)), 1e-14);
    p.periodic = false;
    auto O = hubbard_moments_formula(p, 2);
    EXPECT_EQ(O[1](0, 3), cplx(0));
    EXPECT_NE(D[1](0, 3), cplx(0));
}

TEST(Hubbard, FormulaAgainstED) {
    auto p = chain(0.4, 3, false);
    HubbardED ed(p);
    auto De = ed.moments(3, 0);
    auto Df = hubbard_moments_formula(ed.with_ed_densities(1), 3);
    for (int i = 0; i < 4; ++i) {
        EXPECT_LT(std::abs(De[1](i, i) - Df[1](i, i)), 1e-10);
        if (i + 1 < 4) EXPECT_LT(std::abs(De[1](i, i + 1) - Df[1](i, i + 1)), 1e-10);
        if (i + 2 < 4) EXPECT_LT(std::abs(De[2](i, i + 2) - Df[2](i, i + 2)), 1e-10);
        if (i + 3 < 4) EXPECT_LT(std::abs(De[3](i, i + 3) - Df[3](i, i + 3)), 1e-10);
    }
}

TEST(Hubbard, GreensFunctionStart) {
    HubbardED ed(chain(0.4, 3));
    auto G = ed.greens(0.01, 3, 0);
    EXPECT_LT(max_entry(cplx(0, 1) * G[0] - Mat::Identity(4, 4)), 1e-12);
    EXPECT_LT(ed.car_residual(), 1e-12);
}

TEST(Hubbard, OmegaOneReadings) {
    HubbardED ed(chain(0.4, 3));
    auto D = ed.moments(3, 0);
    auto om = hubbard_omega01(D);
    auto F = evaluate_ladder(operator_F(1), D);
    EXPECT_EQ(om.Omega0, F[0]);
    EXPECT_EQ(om.Omega1, F[1]);
    EXPECT_GT((omega1_unit_reading(D) - om.Omega1).norm(), 1e-3);
}

TEST(Hubbard, KbeFreePropagation) {
    auto p = chain(0.4, 0);
    auto tr = kbe_second_born(p, 1e-3, 500);
    Mat H0 = hubbard_omega(p);
    Mat ref = cplx(0, -1) * (cplx(0, -0.5) * H0).exp();
    EXPECT_LT(max_entry(tr.C[500] - ref), 1e-6);
}

TEST(Hubbard, SecondBornNearED) {
    // deviation from ED up to t = 1 on a 2-site open chain, shrinking with U
    auto deviation = [](double U) {
        HubbardParams p;
        p.sites = 2;
        p.periodic = false;
        p.t = 1;
        p.U = U;
        p.eps0 = 0.3;
        p.beta = 1;
        HubbardED ed(p);
        auto kb = kbe_second_born(ed.with_ed_densities(1), 1e-2, 100);
        auto G = ed.greens(1e-2, 100, 0);
        double dev = 0;
        for (int i = 0; i <= 100; ++i) dev = std::max(dev, max_entry(kb.C[i] - G[i]));
        return dev;
    };
    double big = deviation(0.5), small = deviation(0.25);
    EXPECT_LT(big, 0.1);
    EXPECT_LT(small, 0.5 * big);
}

TEST(Langevin, DisplayedLowOrders) {
    KolmogorovOracle o(1.0, 0.8, 1.2, {0, 0, 0.5, 0, 0.1});
    auto in = o.inputs();
    auto d = langevin_coeffs(in);
    auto c = o.coeffs();
    EXPECT_NEAR(c.Omega, d.Omega, 1e-8);
    EXPECT_NEAR(c.f0, d.f0, 1e-8);
    EXPECT_NEAR(c.f1, 0, 1e-8);
    double V2sq = o.average_derivative_product({2, 2});
    EXPECT_NEAR(c.f2, gle_f2_oracle_form(0.8, in.V2, V2sq), 1e-6);
    EXPECT_GT(std::abs(c.f2 - d.f2), 1e-2);
    EXPECT_THROW(langevin_coeffs(GLEInputs{1, 0, 1}), std::invalid_argument);
}

TEST(ModeCoupling, LowOrderLadder) {
    MCTInputs in{1.3, 0.8, 2, 1, 1, 0.9, 2.5};
    auto c = mct_coeffs(in);
    auto F = evaluate_ladder(operator_F(2), mct_moments(in));
    EXPECT_LT(std::abs(F[0](0, 0)), 1e-12);
    EXPECT_LT(std::abs(F[0](1, 1) - c.w0_sq), 1e-12);
    EXPECT_LT(max_entry(F[1]), 1e-12);
    EXPECT_LT(std::abs(F[2](1, 1) - c.w2_sq), 1e-12);
}

TEST(ModeCoupling, Equipartition) {
    MCTInputs in{1.3, 0.8, 2, 1, 1};
    in.J1 = in.q * in.q * in.kT * in.kT * in.N / (in.m * in.m * in.S);
    EXPECT_NEAR(mct_coeffs(in).w0_sq, 0, 1e-14);
    in.S = 0;
    EXPECT_THROW(mct_coeffs(in), std::invalid_argument);
}
