#include <gtest/gtest.h>

#include "print.hpp"
#include "cmze/numerics.hpp"
#include "cmze/operator_lab.hpp"

using namespace cmze;

namespace {

Mat e1(int d) {
    Mat u = Mat::Zero(d, 1);
    u(0, 0) = 1;
    return u;
}

} // namespace

TEST(OperatorLab, ZeroGenerator) {
    auto sys = make_system(Mat::Zero(3, 3), Mat::Identity(3, 3), e1(3));
    auto D = moments(sys, 4);
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(D[n].norm(), 0);
}

TEST(OperatorLab, RotationMoments) {
    Mat A(2, 2);
    A << 0, 1, -1, 0;
    auto sys = make_system(A, Mat::Identity(2, 2), e1(2));
    auto g = gammas(moments(sys, 4));
    EXPECT_EQ(g[0], cplx(0));
    EXPECT_EQ(g[1], cplx(-1)); // frozen
    EXPECT_EQ(g[3], cplx(1));
}

TEST(OperatorLab, EigenvectorPhase) {
    Mat A = Mat::Zero(3, 3);
    A.diagonal() << cplx(0, 0.7), cplx(0, -1.3), cplx(0, 2.0);
    auto sys = make_system(A, Mat::Identity(3, 3), e1(3));
    auto C = exact_correlation(sys, 0.05, 40);
    for (const auto& c : C) EXPECT_NEAR(std::abs(c(0, 0)), 1.0, 1e-12);
    EXPECT_LT(std::abs(C[40](0, 0) - std::exp(cplx(0, 0.7 * 2.0))), 1e-12);
}

TEST(OperatorLab, Validation) {
    Mat U = Mat::Zero(3, 1);
    U(0, 0) = 2;
    EXPECT_THROW(make_system(Mat::Zero(3, 3), Mat::Identity(3, 3), U), std::invalid_argument);
    Mat M = Mat::Identity(3, 3);
    M(0, 1) = 0.5;
    EXPECT_THROW(make_system(Mat::Zero(3, 3), M, e1(3)), std::invalid_argument);
    EXPECT_THROW(random_system(4, 5, 1), std::invalid_argument);
    EXPECT_THROW(moments(random_system(4, 1, 1), 17), std::invalid_argument);
}

TEST(OperatorLab, Bipartition) {
    auto sys = random_system(8, 2, 3);
    EXPECT_LT(verify_bipartition_identity(sys, 1), 1e-14);
    EXPECT_LT(verify_bipartition_identity(sys, 3), 1e-10);
    // A block diagonal with the projected block: the QLP chain dies
    Mat A = Mat::Zero(4, 4);
    A.block(0, 0, 2, 2) << cplx(0.3, 0.1), cplx(-0.2, 0), cplx(0.5, 0), cplx(0, -0.4);
    A.block(2, 2, 2, 2) << cplx(1, 0), cplx(0.2, 0.3), cplx(0, 0), cplx(-0.7, 0);
    Mat U = Mat::Zero(4, 2);
    U(0, 0) = U(1, 1) = 1;
    auto blk = make_system(A, Mat::Identity(4, 4), U);
    for (int n = 2; n <= 6; ++n) {
        EXPECT_LT(projected_chain(blk, n - 1).norm(), 1e-15);
        EXPECT_LT(verify_bipartition_identity(blk, n), 1e-13);
    }
}

TEST(OperatorLab, KernelExpansionOrders) {
    auto sys = random_system(8, 2, 4);
    auto Phi = evaluate_ladder(operator_F(4), moments(sys, 6));
    auto c0 = verify_kernel_expansion(sys, Phi, 0, 0.2);
    EXPECT_LT((exact_kernel_at(sys, 0) - kernel_series(Phi, Mat::Zero(2, 2), 0)).norm(), 1e-13);
    EXPECT_GT(c0.exponent, 0.7);
    auto c4 = verify_kernel_expansion(sys, Phi, 4, 0.3);
    EXPECT_GT(c4.exponent, 5 - 0.3);
}

TEST(OperatorLab, SkewKernelExpansion) {
    auto sys = skew_system(8, 2);
    auto D = moments(sys, 12);
    auto Phi = evaluate_ladder(corollary_F_prime(4), D);
    for (int N = 0; N <= 3; ++N) EXPECT_GE(verify_kernel_expansion(sys, Phi, N, 1.0, 2).exponent, N + 1 - 0.3) << N;
    EXPECT_THROW(verify_kernel_expansion(sys, Phi, 1, 1.0, 1), std::runtime_error);
}

TEST(OperatorLab, DysonIdentity) {
    auto sys = random_system(6, 2, 5);
    EXPECT_LT(dyson_residual(sys, 0.5, 1e-3), 1e-11);
}

TEST(OperatorLab, ExactMzeResidualIsSecondOrder) {
    auto sys = random_system(8, 2, 6);
    auto D = moments(sys, 1);
    Mat I = Mat::Identity(2, 2);
    auto err = [&](double h) {
        int n = static_cast<int>(std::lround(0.5 / h));
        auto tr = solve_given_kernel(D[1], exact_kernel(sys, h, n), I, h, n);
        return (tr.C.back() - exact_correlation(sys, h, n).back()).norm();
    };
    double ratio = err(0.01) / err(0.005);
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
}

TEST(OperatorLab, SingularMomentRejected) {
    auto sys = skew_system(6, 1);
    EXPECT_THROW(evaluate_ladder(operator_F(1), moments(sys, 3)), std::runtime_error);
}

TEST(OperatorLabProperty, Projections) {
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto sys = random_system(8, 1 + s % 3, s);
        Mat P = sys.P(), Q = sys.Q();
        EXPECT_LT((P * P - P).norm(), 1e-12);
        EXPECT_LT((Q * Q - Q).norm(), 1e-12);
        EXPECT_LT((P * Q).norm(), 1e-12);
    }
}

TEST(OperatorLabProperty, KernelTaylorCoefficients) {
    auto sys = random_system(8, 2, 8);
    auto D = moments(sys, 8);
    auto Kt = kernel_taylor(D, 6);
    for (int n = 0; n < 6; ++n) {
        Mat ref = projected_chain(sys, n + 1);
        EXPECT_LT((Kt[n] - ref).norm(), 1e-8 * std::max(1.0, ref.norm())) << n;
    }
    // central differences of the exact kernel at 0
    const double e = 1e-4;
    Mat d1 = (exact_kernel_at(sys, e) - exact_kernel_at(sys, -e)) / (2 * e);
    EXPECT_LT((d1 - Kt[1]).norm(), 1e-6);
}

TEST(OperatorLabProperty, CommutativeCollapse) {
    auto sys = random_system(8, 1, 11);
    auto D = moments(sys, 8);
    auto g = gammas(D);
    auto fk = laurent_fk(4, false);
    auto Phi = evaluate_ladder(operator_F(4), D);
    std::vector<Mat> phi_l;
    for (int n = 0; n <= 4; ++n) {
        Mat m(1, 1);
        m(0, 0) = eval_gamma_poly(fk[n], g);
        EXPECT_LT(std::abs(m(0, 0) - Phi[n](0, 0)), 1e-12 * std::max(1.0, std::abs(Phi[n](0, 0))));
        phi_l.push_back(m);
    }
    for (int N = 0; N <= 4; ++N) {
        auto a = verify_kernel_expansion(sys, Phi, N, 0.2), b = verify_kernel_expansion(sys, phi_l, N, 0.2);
        for (std::size_t i = 0; i < a.dev.size(); ++i) EXPECT_NEAR(a.dev[i], b.dev[i], 1e-12);
    }
}

TEST(OperatorLabProperty, SkewEvenMomentsVanish) {
    for (std::uint64_t s = 1; s <= 3; ++s) {
        auto sys = skew_system(8, s);
        auto g = gammas(moments(sys, 12));
        for (std::size_t j = 0; j < g.size(); j += 2) EXPECT_LT(std::abs(g[j]), 1e-10);
        EXPECT_LT(skew_odd_moments(sys, 11), 1e-10);
    }
}
