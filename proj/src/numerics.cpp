#include "cmze/numerics.hpp"

#include <cmath>
#include <string>

#include "cmze/families.hpp"

namespace cmze {

BlowUp::BlowUp(int s, double value)
    : std::runtime_error("solution blew up at step " + std::to_string(s) + " (|C| = " + std::to_string(value) + ")"),
      step(s) {}

namespace {

constexpr double kBlowUp = 1e6;

void guard(const Mat& C, int step) {
    double v = C.cwiseAbs().maxCoeff();
    if (!std::isfinite(v) || v > kBlowUp) throw BlowUp(step, v);
}

} // namespace

Trajectory solve_volterra(const Mat& C0, const Mat& Omega, const KernelFn& kernel, double h, int steps) {
    if (h <= 0 || steps < 0) throw std::invalid_argument("step size must be positive");
    if (Omega.rows() != C0.cols() || Omega.cols() != C0.cols())
        throw std::invalid_argument("dimension mismatch between C(0) and Omega");
    Trajectory tr;
    tr.h = h;
    tr.C.reserve(steps + 1);
    tr.C.push_back(C0);
    std::vector<Mat> K;
    K.reserve(steps + 1);
    K.push_back(kernel(0, C0));
    if (K[0].rows() != C0.cols() || K[0].cols() != C0.cols()) throw std::invalid_argument("kernel dimension mismatch");
    auto& C = tr.C;
    // interior part of the memory sum at index n+1: sum_{j=1}^{n} C_{n+1-j} K_j
    auto interior = [&](int n1) {
        Mat s = Mat::Zero(C0.rows(), C0.cols());
        for (int j = 1; j < n1; ++j) s.noalias() += C[n1 - j] * K[j];
        return s;
    };
    Mat f = C0 * Omega;
    for (int n = 0; n < steps; ++n) {
        Mat pred = C[n] + h * f;
        Mat Kp = kernel(n + 1, pred);
        Mat S = interior(n + 1);
        Mat mem_p = h * (S + 0.5 * (pred * K[0] + C0 * Kp));
        Mat fp = pred * Omega + mem_p;
        Mat next = C[n] + 0.5 * h * (f + fp);
        guard(next, n + 1);
        C.push_back(next);
        K.push_back(kernel(n + 1, next));
        f = next * Omega + h * (S + 0.5 * (next * K[0] + C0 * K[n + 1]));
    }
    return tr;
}

ScalarKernel power_series_kernel(const std::vector<cplx>& f, int N) {
    std::vector<cplx> c;
    double fact = 1;
    for (int n = 0; n <= N && n < static_cast<int>(f.size()); ++n) {
        if (n > 0) fact *= n;
        c.push_back(f[n] / fact);
    }
    return [c](cplx x) {
        cplx acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
}

cplx Pade::operator()(cplx x) const {
    cplx num = 0, den = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) num = num * x + *it;
    for (auto it = b.rbegin(); it != b.rend(); ++it) den = den * x + *it;
    return num / den;
}

Pade pade_from_series(const std::vector<cplx>& f, int m, int n) {
    if (m < 0 || n < 0) throw std::invalid_argument("Pade orders must be nonnegative");
    if (static_cast<int>(f.size()) < m + n + 1) throw std::invalid_argument("Pade order exceeds the available series");
    std::vector<cplx> c(m + n + 1);
    double fact = 1;
    for (int k = 0; k <= m + n; ++k) {
        if (k > 0) fact *= k;
        c[k] = f[k] / fact;
    }
    auto coef = [&](int k) { return k < 0 ? cplx(0) : c[k]; };
    Pade p;
    p.b.assign(n + 1, 0);
    p.b[0] = 1;
    if (n > 0) {
        Eigen::MatrixXcd A(n, n);
        Eigen::VectorXcd rhs(n);
        for (int i = 1; i <= n; ++i) {
            for (int j = 1; j <= n; ++j) A(i - 1, j - 1) = coef(m + i - j);
            rhs(i - 1) = -coef(m + i);
        }
        Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
        if (!lu.isInvertible()) throw std::runtime_error("singular Pade system");
        Eigen::VectorXcd sol = lu.solve(rhs);
        for (int j = 1; j <= n; ++j) p.b[j] = sol(j - 1);
    }
    p.a.assign(m + 1, 0);
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= std::min(i, n); ++j) p.a[i] += p.b[j] * coef(i - j);
    return p;
}

ScalarKernel pade_kernel(const Pade& p) {
    return [p](cplx x) { return p(x); };
}

Basis parse_basis(const std::string& name) {
    if (name == "chebyshev") return Basis::Chebyshev;
    if (name == "legendre") return Basis::Legendre;
    throw std::invalid_argument("unknown basis '" + name + "'");
}

std::vector<std::vector<Rat>> basis_monomials(Basis b, int N) {
    std::vector<std::vector<Rat>> T(N + 1, std::vector<Rat>(N + 1, Rat(0)));
    T[0][0] = 1;
    if (N >= 1) T[1][1] = 1;
    for (int n = 1; n < N; ++n) {
        // Chebyshev: T_{n+1} = 2x T_n - T_{n-1}; Legendre: (n+1)P_{n+1} = (2n+1)x P_n - n P_{n-1}
        Rat alpha = b == Basis::Chebyshev ? Rat(2) : Rat(2 * n + 1, n + 1);
        Rat beta = b == Basis::Chebyshev ? Rat(1) : Rat(n, n + 1);
        for (int k = 0; k <= N; ++k) {
            Rat v = -beta * T[n - 1][k];
            if (k > 0) v += alpha * T[n][k - 1];
            T[n + 1][k] = v;
        }
    }
    return T;
}

namespace {

std::vector<Rat> taylor(const std::vector<Rat>& f) {
    std::vector<Rat> c;
    for (std::size_t k = 0; k < f.size(); ++k) c.push_back(f[k] / factorial(static_cast<int>(k)));
    return c;
}

// solve sum_n w_n T[n][k] = c_k by back substitution from the top degree
template <class V>
std::vector<V> basis_solve(const std::vector<std::vector<Rat>>& T, std::vector<V> c) {
    const int N = static_cast<int>(c.size()) - 1;
    std::vector<V> w(N + 1);
    for (int n = N; n >= 0; --n) {
        Rat lead = T[n][n];
        if constexpr (std::is_same_v<V, Rat>)
            w[n] = c[n] / lead;
        else
            w[n] = c[n] / lead.get_d();
        for (int k = 0; k <= n; ++k) {
            if constexpr (std::is_same_v<V, Rat>)
                c[k] -= w[n] * T[n][k];
            else
                c[k] -= w[n] * T[n][k].get_d();
        }
    }
    return w;
}

} // namespace

std::vector<Rat> orthogonal_coeffs(const std::vector<Rat>& f, Basis b) {
    if (f.empty()) return {};
    return basis_solve(basis_monomials(b, static_cast<int>(f.size()) - 1), taylor(f));
}

std::vector<cplx> orthogonal_coeffs(const std::vector<cplx>& f, Basis b) {
    if (f.empty()) return {};
    std::vector<cplx> c;
    double fact = 1;
    for (std::size_t k = 0; k < f.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        c.push_back(f[k] / fact);
    }
    return basis_solve(basis_monomials(b, static_cast<int>(f.size()) - 1), c);
}

std::vector<Rat> monomial_coeffs(const std::vector<Rat>& w, Basis b) {
    const int N = static_cast<int>(w.size()) - 1;
    auto T = basis_monomials(b, N);
    std::vector<Rat> c(N + 1, Rat(0));
    for (int n = 0; n <= N; ++n)
        for (int k = 0; k <= n; ++k) c[k] += w[n] * T[n][k];
    return c;
}

ScalarKernel orthogonal_kernel(const std::vector<cplx>& w, Basis b) {
    return [w, b](cplx x) {
        // three-term recurrence evaluation
        cplx prev = 1, cur = x, acc = 0;
        for (std::size_t n = 0; n < w.size(); ++n) {
            cplx phi = n == 0 ? prev : cur;
            acc += w[n] * phi;
            if (n >= 1) {
                double k = static_cast<double>(n);
                cplx next = b == Basis::Chebyshev ? 2.0 * x * cur - prev : ((2 * k + 1) * x * cur - k * prev) / (k + 1);
                prev = cur;
                cur = next;
            }
        }
        return acc;
    };
}

Trajectory solve_scalar_cmze(cplx Omega, const ScalarKernel& K, double h, int steps) {
    Mat C0 = Mat::Identity(1, 1), Om(1, 1);
    Om(0, 0) = Omega;
    return solve_volterra(C0, Om, [&](int, const Mat& C) {
        Mat k(1, 1);
        k(0, 0) = K(C(0, 0) - 1.0);
        return k;
    }, h, steps);
}

Trajectory solve_matrix_cmze(const Mat& Omega, const std::vector<Mat>& Phi, int N, const Mat& C0, double h,
                             int steps) {
    if (C0.rows() != C0.cols()) throw std::invalid_argument("matrix CMZE needs a square C(0)");
    for (const auto& p : Phi)
        if (p.rows() != C0.rows() || p.cols() != C0.cols()) throw std::invalid_argument("coefficient dimension mismatch");
    return solve_volterra(C0, Omega, [&](int, const Mat& C) {
        Mat Chat = C - C0;
        Mat acc = Mat::Zero(C0.rows(), C0.cols());
        Mat pw = Mat::Identity(C0.rows(), C0.cols());
        double fact = 1;
        for (int n = 0; n <= N && n < static_cast<int>(Phi.size()); ++n) {
            if (n > 0) pw = pw * Chat, fact *= n;
            acc += Phi[n] * pw / fact;
        }
        return acc;
    }, h, steps);
}

Trajectory solve_given_kernel(const Mat& Omega, const std::vector<Mat>& K, const Mat& C0, double h, int steps) {
    if (static_cast<int>(K.size()) < steps + 1) throw std::invalid_argument("kernel samples do not cover the grid");
    return solve_volterra(C0, Omega, [&](int j, const Mat&) { return K[j]; }, h, steps);
}

Trajectory solve_mct(double w0_sq, double w2_sq, const MCTParams& p, double h, int steps) {
    if (p.S <= 0) throw std::invalid_argument("S(|q|) must be positive");
    if (p.q == 0) throw std::invalid_argument("q must be nonzero");
    if (h <= 0) throw std::invalid_argument("step size must be positive");
    const double a = p.linear();
    const double lin = w0_sq + 0.5 * w2_sq;
    const double q2 = p.q * p.q;
    const double cb = p.m * w2_sq / (q2 * p.kT);
    const double cc = 0.5 * p.m * w2_sq / (q2 * p.S * p.kT);
    const double ce = 0.5 * p.m * p.m * p.N * p.N * w2_sq / (q2 * q2 * p.kT * p.kT);
    std::vector<double> F{p.N * p.S}, G{0.0}, H; // H = F''
    // F''(t_n) from the equation; the s = t endpoints carry G(0) = 0
    auto second = [&](int n, double Fn, double Gn) {
        auto g = [&](int j) { return j == n ? Gn : G[j]; };
        double I1 = 0.5 * (g(0) + g(n)), I2 = 0.5 * H[0] * g(n), I3 = 0.5 * G[0] * G[0] * g(n), I4 = 0.5 * H[0] * H[0] * g(n);
        if (n == 0) I1 = I2 = I3 = I4 = 0;
        for (int j = 1; j < n; ++j) {
            double gt = g(n - j);
            I1 += g(j);
            I2 += H[j] * gt;
            I3 += G[j] * G[j] * gt;
            I4 += H[j] * H[j] * gt;
        }
        return -a * Fn + lin * h * I1 + cb * h * I2 + cc * h * I3 - ce * h * I4;
    };
    H.push_back(-a * F[0]);
    for (int n = 0; n < steps; ++n) {
        double Fp = F[n] + h * G[n], Gp = G[n] + h * H[n];
        double Hp = second(n + 1, Fp, Gp);
        double Fn = F[n] + 0.5 * h * (G[n] + Gp);
        double Gn = G[n] + 0.5 * h * (H[n] + Hp);
        if (!std::isfinite(Fn) || std::abs(Fn) > kBlowUp * std::max(1.0, std::abs(F[0]))) throw BlowUp(n + 1, std::abs(Fn));
        F.push_back(Fn);
        G.push_back(Gn);
        H.push_back(second(n + 1, Fn, Gn));
    }
    Trajectory tr;
    tr.h = h;
    for (int n = 0; n <= steps; ++n) {
        tr.C.push_back(Mat::Constant(1, 1, F[n]));
        tr.dC.push_back(Mat::Constant(1, 1, G[n]));
    }
    return tr;
}

double richardson_order(double e_h, double e_h2, double e_h4) {
    return std::log2(std::abs(e_h - e_h2) / std::abs(e_h2 - e_h4));
}

double richardson_order(const Mat& y_h, const Mat& y_h2, const Mat& y_h4) {
    return std::log2((y_h - y_h2).norm() / (y_h2 - y_h4).norm());
}

} // namespace cmze
