#pragma once
// Finite-dimensional oracle. The generator A plays the role of L; the Mori
// projection is P = U U^* M. An operator X on Ran(P) is represented by the
// r x r matrix [X] with X U = U [X], so words map to matrix products in
// reading order.

#include <cstdint>
#include <vector>

#include "cmze/word_equation.hpp"

namespace cmze {

struct OperatorSystem {
    Mat A; // generator
    Mat M; // metric
    Mat U; // d x r, M-orthonormal

    int dim() const { return static_cast<int>(A.rows()); }
    int rank() const { return static_cast<int>(U.cols()); }
    Mat P() const { return U * U.adjoint() * M; }
    Mat Q() const { return Mat::Identity(dim(), dim()) - P(); }
    void validate() const;
};

// raises on non-orthonormal U, non-Hermitian or ill-conditioned M
OperatorSystem make_system(const Mat& A, const Mat& M, const Mat& U);
// complex Gaussian A scaled by 1/sqrt(d), M = I + 0.3 B B^*/d
OperatorSystem random_system(int dim, int rank, std::uint64_t seed);
// real antisymmetric A of unit spectral norm, real unit u, M = I
OperatorSystem skew_system(int dim, std::uint64_t seed);

std::vector<Mat> moments(const OperatorSystem& sys, int n); // D_0 = I .. D_n
std::vector<Mat> exact_correlation(const OperatorSystem& sys, double h, int steps);
std::vector<Mat> exact_kernel(const OperatorSystem& sys, double h, int steps);
Mat exact_kernel_at(const OperatorSystem& sys, double s);
// P L (QL)^k P
Mat projected_chain(const OperatorSystem& sys, int k);
// Taylor coefficients K^(n)(0) = P L (QL)^(n+1) P, n = 0..count-1
std::vector<Mat> kernel_taylor(const std::vector<Mat>& D, int count);

// b_i -> D_i, b1^-1 and b2^-1 -> inverses
std::function<Mat(const Letter&)> moment_images(const std::vector<Mat>& D);
std::vector<Mat> evaluate_ladder(const Ladder& F, const std::vector<Mat>& D);
// sum_n Phi_n Chat^n / n!, powers on the right
Mat kernel_series(const std::vector<Mat>& Phi, const Mat& Chat, int N);

double verify_bipartition_identity(const OperatorSystem& sys, int n);

struct ExpansionCheck {
    double max_dev = 0;
    double exponent = 0; // fitted slope of log deviation vs log s
    std::vector<double> s, dev;
};
// wcase 2 checks D_2 instead of D_1 for invertibility
ExpansionCheck verify_kernel_expansion(const OperatorSystem& sys, const std::vector<Mat>& Phi, int N, double t_max,
                                       int wcase = 1);

// e^{tA} against e^{tQA} + int e^{(t-s)A} P A e^{sQA} ds (Simpson)
double dyson_residual(const OperatorSystem& sys, double t, double h);
// max |Re D_odd|, expected zero for skew generators
double skew_odd_moments(const OperatorSystem& sys, int n);

// scalar moments gamma_j = D_{j+1}, for a rank-one system
std::vector<cplx> gammas(const std::vector<Mat>& D);
cplx eval_gamma_poly(const CPoly& p, const std::vector<cplx>& gamma);

} // namespace cmze
