#pragma once
// Volterra integro-differential solvers and kernel resummations.

#include <functional>
#include <stdexcept>
#include <vector>

#include "cmze/word.hpp"

namespace cmze {

struct BlowUp : std::runtime_error {
    int step;
    BlowUp(int s, double value);
};

struct Trajectory {
    double h = 0;
    std::vector<Mat> C;
    std::vector<Mat> dC; // filled by the second-order solver only
    int steps() const { return static_cast<int>(C.size()) - 1; }
};

// K(t_j) from the step index and the already corrected or predicted C(t_j)
using KernelFn = std::function<Mat(int, const Mat&)>;

// C' = C Omega + int_0^t C(t-s) K(s) ds, trapezoid memory, Heun step
Trajectory solve_volterra(const Mat& C0, const Mat& Omega, const KernelFn& kernel, double h, int steps);

// ---- kernels of Chat = C - C(0) ----
using ScalarKernel = std::function<cplx(cplx)>;
ScalarKernel power_series_kernel(const std::vector<cplx>& f, int N); // sum f_n x^n / n!

struct Pade {
    std::vector<cplx> a; // numerator
    std::vector<cplx> b; // denominator, b[0] = 1
    cplx operator()(cplx x) const;
};
// [m/n] of sum_k f_k x^k / k!
Pade pade_from_series(const std::vector<cplx>& f, int m, int n);
ScalarKernel pade_kernel(const Pade& p);

enum class Basis { Chebyshev, Legendre };
Basis parse_basis(const std::string& name);
// monomial coefficients of phi_0..phi_N, row n = phi_n
std::vector<std::vector<Rat>> basis_monomials(Basis b, int N);
// w with sum_n w_n phi_n = sum_k f_k x^k / k!
std::vector<Rat> orthogonal_coeffs(const std::vector<Rat>& f, Basis b);
std::vector<cplx> orthogonal_coeffs(const std::vector<cplx>& f, Basis b);
std::vector<Rat> monomial_coeffs(const std::vector<Rat>& w, Basis b);
ScalarKernel orthogonal_kernel(const std::vector<cplx>& w, Basis b);

// dC/dt = Omega C + int K(Chat(s)) C(t-s) ds, C(0) = 1
Trajectory solve_scalar_cmze(cplx Omega, const ScalarKernel& K, double h, int steps);
// K(s) = sum_{n<=N} Phi_n Chat(s)^n / n!
Trajectory solve_matrix_cmze(const Mat& Omega, const std::vector<Mat>& Phi, int N, const Mat& C0, double h,
                             int steps);
Trajectory solve_given_kernel(const Mat& Omega, const std::vector<Mat>& K, const Mat& C0, double h, int steps);

struct MCTParams {
    double q = 1, S = 1, N = 1, m = 1, kT = 1;
    double linear() const { return q * q * kT / (m * S); }
};
// second-order equation for F(q,t); C holds F, dC holds dF/dt
Trajectory solve_mct(double w0_sq, double w2_sq, const MCTParams& p, double h, int steps);

// p from three runs at h, h/2, h/4
double richardson_order(double e_h, double e_h2, double e_h4);
double richardson_order(const Mat& y_h, const Mat& y_h2, const Mat& y_h4);

} // namespace cmze
