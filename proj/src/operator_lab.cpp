#include <unsupported/Eigen/MatrixFunctions>

#include "cmze/operator_lab.hpp"

#include <cmath>
#include <random>

namespace cmze {

namespace {

constexpr double kTol = 1e-12;

Mat expm(const Mat& X) {
    // TODO: the 1e3 guard is on the unscaled norm; scaling-and-squaring itself copes with more
    if (X.cwiseAbs().rowwise().sum().maxCoeff() > 1e3) throw std::runtime_error("matrix exponent norm above 1e3");
    return X.exp();
}

} // namespace

void OperatorSystem::validate() const {
    const int d = dim();
    if (A.cols() != d || M.rows() != d || M.cols() != d || U.rows() != d)
        throw std::invalid_argument("operator system dimension mismatch");
    if ((M - M.adjoint()).norm() > kTol * (1 + M.norm())) throw std::invalid_argument("metric is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    double lo = es.eigenvalues().minCoeff(), hi = es.eigenvalues().maxCoeff();
    if (lo <= 0 || hi / lo > 1e12) throw std::invalid_argument("metric is not positive definite or is ill-conditioned");
    Mat G = U.adjoint() * M * U;
    if ((G - Mat::Identity(rank(), rank())).norm() > kTol) throw std::invalid_argument("U is not M-orthonormal");
}

OperatorSystem make_system(const Mat& A, const Mat& M, const Mat& U) {
    OperatorSystem s{A, M, U};
    s.validate();
    return s;
}

namespace {

// Gram-Schmidt in the M inner product
Mat orthonormalize(Mat V, const Mat& M) {
    for (int j = 0; j < V.cols(); ++j) {
        for (int i = 0; i < j; ++i) V.col(j) -= V.col(i) * (V.col(i).adjoint() * M * V.col(j))(0, 0);
        double nrm = std::sqrt(std::real((V.col(j).adjoint() * M * V.col(j))(0, 0)));
        V.col(j) /= nrm;
    }
    return V;
}

Mat gaussian(int rows, int cols, std::mt19937_64& rng, bool complex_entries) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat X(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            double re = nd(rng);
            double im = complex_entries ? nd(rng) : 0.0;
            X(i, j) = cplx(re, im);
        }
    return X;
}

} // namespace

OperatorSystem random_system(int dim, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > dim) throw std::invalid_argument("rank must lie in [1, dim]");
    std::mt19937_64 rng(seed);
    Mat A = gaussian(dim, dim, rng, true) / std::sqrt(2.0 * dim);
    Mat B = gaussian(dim, dim, rng, true) / std::sqrt(2.0);
    Mat M = Mat::Identity(dim, dim) + 0.3 * B * B.adjoint() / dim;
    M = 0.5 * (M + M.adjoint());
    Mat U = orthonormalize(gaussian(dim, rank, rng, true), M);
    return make_system(A, M, U);
}

OperatorSystem skew_system(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Mat G = gaussian(dim, dim, rng, false);
    Mat A = G - G.transpose();
    Eigen::JacobiSVD<Mat> svd(A);
    A /= svd.singularValues()(0);
    Mat M = Mat::Identity(dim, dim);
    Mat U = orthonormalize(gaussian(dim, 1, rng, false), M);
    return make_system(A, M, U);
}

std::vector<Mat> moments(const OperatorSystem& sys, int n) {
    if (n > 16) throw std::invalid_argument("moment order capped at 16");
    std::vector<Mat> D;
    Mat V = sys.U;
    Mat W = sys.U.adjoint() * sys.M;
    for (int k = 0; k <= n; ++k) {
        D.push_back(W * V);
        V = sys.A * V;
    }
    return D;
}

std::vector<Mat> exact_correlation(const OperatorSystem& sys, double h, int steps) {
    Mat step = expm(h * sys.A);
    Mat W = sys.U.adjoint() * sys.M;
    std::vector<Mat> out;
    Mat V = sys.U;
    for (int k = 0; k <= steps; ++k) {
        out.push_back(W * V);
        V = step * V;
    }
    return out;
}

std::vector<Mat> exact_kernel(const OperatorSystem& sys, double h, int steps) {
    Mat Q = sys.Q();
    Mat QA = Q * sys.A;
    Mat step = expm(h * QA);
    Mat left = sys.U.adjoint() * sys.M * sys.A;
    Mat V = QA * sys.U;
    std::vector<Mat> out;
    for (int k = 0; k <= steps; ++k) {
        out.push_back(left * V);
        V = step * V;
    }
    return out;
}

Mat exact_kernel_at(const OperatorSystem& sys, double s) {
    Mat QA = sys.Q() * sys.A;
    return sys.U.adjoint() * sys.M * sys.A * expm(s * QA) * QA * sys.U;
}

Mat projected_chain(const OperatorSystem& sys, int k) {
    Mat QA = sys.Q() * sys.A;
    Mat V = sys.U;
    for (int i = 0; i < k; ++i) V = QA * V;
    return sys.U.adjoint() * sys.M * sys.A * V;
}

std::vector<Mat> kernel_taylor(const std::vector<Mat>& D, int count) {
    // chi_n = D_n - sum_{k=1}^{n-1} D_{n-k} chi_k is P L (QL)^{n-1} P
    const int need = count + 2;
    if (static_cast<int>(D.size()) <= need - 1) throw std::invalid_argument("not enough moments for kernel Taylor series");
    std::vector<Mat> chi(need);
    for (int n = 1; n < need; ++n) {
        chi[n] = D[n];
        for (int k = 1; k < n; ++k) chi[n] -= D[n - k] * chi[k];
    }
    std::vector<Mat> out;
    for (int n = 0; n < count; ++n) out.push_back(chi[n + 2]);
    return out;
}

std::function<Mat(const Letter&)> moment_images(const std::vector<Mat>& D) {
    std::vector<Mat> inv(3);
    for (int i = 1; i <= 2 && i < static_cast<int>(D.size()); ++i) {
        Eigen::JacobiSVD<Mat> svd(D[i]);
        auto sv = svd.singularValues();
        if (sv(sv.size() - 1) > 1e-8 * std::max(1.0, sv(0))) inv[i] = D[i].inverse();
    }
    return [D, inv](const Letter& l) -> Mat {
        if (l.alpha != ALPHA_B && l.alpha != ALPHA_A) throw std::invalid_argument("moment images cover a/b letters only");
        if (l.index >= static_cast<int>(D.size())) throw std::invalid_argument("moment table too short");
        if (!l.inv) return D[l.index];
        if (inv[l.index].size() == 0) throw std::runtime_error("singular moment matrix D_" + std::to_string(l.index));
        return inv[l.index];
    };
}

std::vector<Mat> evaluate_ladder(const Ladder& F, const std::vector<Mat>& D) {
    auto img = moment_images(D);
    const int r = static_cast<int>(D[0].rows());
    std::vector<Mat> out;
    for (const auto& f : F) out.push_back(substitute(f, img, r));
    return out;
}

Mat kernel_series(const std::vector<Mat>& Phi, const Mat& Chat, int N) {
    Mat K = Mat::Zero(Chat.rows(), Chat.cols());
    Mat pw = Mat::Identity(Chat.rows(), Chat.cols());
    double fact = 1;
    for (int n = 0; n <= N && n < static_cast<int>(Phi.size()); ++n) {
        if (n > 0) {
            pw = pw * Chat;
            fact *= n;
        }
        K += Phi[n] * pw / fact;
    }
    return K;
}

double verify_bipartition_identity(const OperatorSystem& sys, int n) {
    if (n < 1 || n > 10) throw std::invalid_argument("bipartition check needs 1 <= n <= 10");
    auto D = moments(sys, n);
    Mat lhs = substitute(bipart(n, ALPHA_B), moment_images(D), sys.rank());
    return (lhs - projected_chain(sys, n - 1)).norm();
}

ExpansionCheck verify_kernel_expansion(const OperatorSystem& sys, const std::vector<Mat>& Phi, int N, double t_max,
                                       int wcase) {
    auto D = moments(sys, 2);
    Eigen::JacobiSVD<Mat> svd(D[wcase == 2 ? 2 : 1]);
    if (svd.singularValues().minCoeff() < 1e-8)
        throw std::runtime_error(wcase == 2 ? "PL^2P is singular on Ran(P)" : "PLP is singular on Ran(P)");
    ExpansionCheck out;
    const int pts = 12;
    const double s_min = t_max / 10;
    Mat I = Mat::Identity(sys.rank(), sys.rank());
    Mat W = sys.U.adjoint() * sys.M;
    for (int i = 0; i < pts; ++i) {
        double s = s_min * std::pow(t_max / s_min, double(i) / (pts - 1));
        Mat C = W * expm(s * sys.A) * sys.U;
        double dev = (exact_kernel_at(sys, s) - kernel_series(Phi, C - I, N)).norm();
        out.s.push_back(s);
        out.dev.push_back(dev);
        out.max_dev = std::max(out.max_dev, dev);
    }
    // least squares slope in log-log
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < pts; ++i) {
        double x = std::log(out.s[i]), y = std::log(std::max(out.dev[i], 1e-300));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    out.exponent = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
    return out;
}

double dyson_residual(const OperatorSystem& sys, double t, double h) {
    int n = static_cast<int>(std::lround(t / h));
    if (n % 2) ++n;
    h = t / n;
    Mat PA = sys.P() * sys.A;
    Mat QA = sys.Q() * sys.A;
    Mat eA = expm(h * sys.A), eQ = expm(h * QA);
    std::vector<Mat> full(n + 1), proj(n + 1);
    full[0] = proj[0] = Mat::Identity(sys.dim(), sys.dim());
    for (int k = 1; k <= n; ++k) full[k] = full[k - 1] * eA, proj[k] = proj[k - 1] * eQ;
    Mat integral = Mat::Zero(sys.dim(), sys.dim());
    for (int k = 0; k <= n; ++k) {
        double w = (k == 0 || k == n) ? 1 : (k % 2 ? 4 : 2);
        integral += w * full[n - k] * PA * proj[k];
    }
    integral *= h / 3;
    return (expm(t * sys.A) - expm(t * QA) - integral).norm();
}

double skew_odd_moments(const OperatorSystem& sys, int n) {
    auto D = moments(sys, n);
    double worst = 0;
    for (int k = 1; k <= n; k += 2) worst = std::max(worst, D[k].real().cwiseAbs().maxCoeff());
    return worst;
}

std::vector<cplx> gammas(const std::vector<Mat>& D) {
    std::vector<cplx> g;
    for (std::size_t i = 1; i < D.size(); ++i) {
        if (D[i].rows() != 1) throw std::invalid_argument("scalar moments need a rank-one projection");
        g.push_back(D[i](0, 0));
    }
    return g;
}

cplx eval_gamma_poly(const CPoly& p, const std::vector<cplx>& gamma) {
    return p.eval([&](const Letter& l) -> cplx {
        if (l.alpha != ALPHA_G || l.index >= static_cast<int>(gamma.size()))
            throw std::invalid_argument("missing moment g" + std::to_string(l.index));
        return gamma[l.index];
    });
}

} // namespace cmze
