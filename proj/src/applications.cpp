#include "cmze/applications.hpp"

#include <cmath>
#include <map>

namespace cmze {

namespace {
const cplx I1(0, 1);
}

// ---------------- Hubbard closed forms ----------------

double HubbardParams::dens(int i) const {
    if (periodic) i = ((i % sites) + sites) % sites;
    if (i < 0 || i >= sites) return 0;
    return n.empty() ? 0 : (n.size() == 1 ? n[0] : n[i]);
}

double HubbardParams::pair(int i) const {
    if (periodic) i = ((i % sites) + sites) % sites;
    if (i < 0 || i >= sites - 1 + (periodic ? 1 : 0)) return 0;
    return nn.empty() ? 0 : (nn.size() == 1 ? nn[0] : nn[i]);
}

void HubbardParams::validate() const {
    if (sites < 2 || sites > 8) throw std::invalid_argument("Hubbard chain needs 2..8 sites");
    if (!n.empty() && n.size() != 1 && static_cast<int>(n.size()) != sites)
        throw std::invalid_argument("density list must have one entry or one per site");
    for (double x : n)
        if (x < 0 || x > 1) throw std::invalid_argument("densities must lie in [0, 1]");
    if (beta <= 0) throw std::invalid_argument("beta must be positive");
}

cplx hubbard_a(const HubbardParams& p, int n, int k, int i) {
    const double e = p.e(), t = p.t, U = p.U;
    const double ni = p.dens(i), nl = p.dens(i - 1), nr = p.dens(i + 1);
    if (n == 1) {
        if (k == 0) return -I1 * e - I1 * U * ni;
        if (k == 1 || k == -1) return -I1 * t;
        return 0;
    }
    if (n == 2) {
        if (k == 0) return -(e * e + 2 * U * e * ni + 2 * t * t + U * U * ni);
        if (k == 1) return -(2 * t * e + U * t * (ni + nr));
        if (k == -1) return -(2 * t * e + U * t * (ni + nl));
        if (k == 2 || k == -2) return -t * t;
        return 0;
    }
    if (n == 3) {
        if (k == 0)
            return I1 * (e * e * e + 3 * U * e * e * ni + 6 * t * t * e + 3 * U * U * e * ni +
                         t * t * U * (4 * ni + nl + nr) + U * U * U * ni);
        if (k == 1 || k == -1) {
            double nj = k == 1 ? nr : nl;
            double corr = k == 1 ? p.pair(i) : p.pair(i - 1);
            return I1 * (3 * t * e * e + 3 * t * U * e * (ni + nj) + 3 * t * t * t + t * U * U * (ni + nj + corr));
        }
        if (k == 2 || k == -2) {
            int s = k > 0 ? 1 : -1;
            // the i multiplies the whole bracket; ED agrees only with this reading
            return I1 * (3 * t * t * e + t * t * U * (ni + p.dens(i + s) + p.dens(i + 2 * s)));
        }
        if (k == 3 || k == -3) return I1 * t * t * t;
        return 0;
    }
    throw std::invalid_argument("closed forms are available up to order 3");
}

std::vector<Mat> hubbard_moments_formula(const HubbardParams& p, int order) {
    p.validate();
    if (order > 3) throw std::invalid_argument("closed forms are available up to order 3; use the ED oracle");
    const int N = p.sites;
    std::vector<Mat> D{Mat::Identity(N, N)};
    for (int n = 1; n <= order; ++n) {
        Mat Dn = Mat::Zero(N, N);
        for (int i = 0; i < N; ++i)
            for (int k = -n; k <= n; ++k) {
                int j = i + k;
                if (p.periodic)
                    j = ((j % N) + N) % N;
                else if (j < 0 || j >= N)
                    continue;
                Dn(i, j) += hubbard_a(p, n, k, i);
            }
        D.push_back(Dn);
    }
    return D;
}

namespace {

std::vector<std::pair<int, int>> bonds(const HubbardParams& p) {
    std::vector<std::pair<int, int>> b;
    for (int i = 0; i < p.sites; ++i) {
        if (i + 1 < p.sites)
            b.emplace_back(i, i + 1);
        else if (p.periodic)
            b.emplace_back(i, 0);
    }
    return b;
}

} // namespace

Mat hubbard_omega(const HubbardParams& p) {
    p.validate();
    Mat O = Mat::Zero(p.sites, p.sites);
    for (int i = 0; i < p.sites; ++i) O(i, i) = p.e() + p.U * p.dens(i);
    for (auto [i, j] : bonds(p)) O(i, j) += p.t, O(j, i) += p.t;
    return O;
}

HubbardScalar hubbard_scalar_display(const HubbardParams& p, int i) {
    const double e = p.e(), t = p.t, U = p.U, n = p.dens(i);
    const double den = e + U * n;
    if (den == 0) throw std::runtime_error("(eps0 - mu) + U<n> vanishes; f_1 is undefined");
    HubbardScalar s;
    s.Omega = den;
    s.f0 = U * U * (n * n - n) + e * U * (n - 1) - 2 * t * t;
    s.f1 = -1 / den *
               (e * e * e + 3 * U * e * e * n + 6 * t * t * e + 3 * U * U * e * n +
                t * t * U * (4 * n + p.dens(i - 1) + p.dens(i + 1)) + U * U * U * n) -
           U * U * n * n + 2 * U * U * n + 2 * U * e + 4 * t * t + e * e;
    return s;
}

HubbardScalar hubbard_scalar_moments(const HubbardParams& p, int i) {
    const double den = p.e() + p.U * p.dens(i);
    if (den == 0) throw std::runtime_error("(eps0 - mu) + U<n> vanishes; f_1 is undefined");
    std::vector<cplx> g{hubbard_a(p, 1, 0, i), hubbard_a(p, 2, 0, i), hubbard_a(p, 3, 0, i)};
    auto L = laurent_fk(1, false);
    HubbardScalar s;
    s.Omega = den;
    s.f0 = eval_gamma_poly(L[0], g);
    s.f1 = eval_gamma_poly(L[1], g);
    return s;
}

Omega01 hubbard_omega01(const std::vector<Mat>& D) {
    if (D.size() < 4) throw std::invalid_argument("Omega_1 needs D_1..D_3");
    Eigen::JacobiSVD<Mat> svd(D[1]);
    if (svd.singularValues().minCoeff() < 1e-8) throw std::runtime_error("D_1 is singular");
    auto F = evaluate_ladder(operator_F(1), D);
    return Omega01{F[0], F[1]};
}

Mat omega1_unit_reading(const std::vector<Mat>& D) {
    if (D.size() < 4) throw std::invalid_argument("Omega_1 needs D_1..D_3");
    std::vector<Mat> E = D;
    E[1] = Mat::Identity(D[1].rows(), D[1].cols());
    return evaluate_ladder(operator_F(1), E)[1];
}

// ---------------- exact diagonalization ----------------

HubbardED::HubbardED(const HubbardParams& p) : p_(p), sites_(p.sites) {
    p.validate();
    if (p.sites > 4) throw std::invalid_argument("exact diagonalization supports at most 4 sites");
    const int modes = 2 * sites_;
    const int dim = 1 << modes;
    site_ops_.assign(modes, Eigen::MatrixXd::Zero(dim, dim));
    for (int m = 0; m < modes; ++m)
        for (int s = 0; s < dim; ++s)
            if (s >> m & 1) {
                int below = __builtin_popcount(s & ((1 << m) - 1));
                site_ops_[m](s ^ (1 << m), s) = below % 2 ? -1.0 : 1.0;
            }
    // H is diagonal in occupations apart from hopping
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        double d = 0;
        for (int i = 0; i < sites_; ++i) {
            int up = s >> (2 * i) & 1, dn = s >> (2 * i + 1) & 1;
            d += p.e() * (up + dn) + p.U * up * dn;
        }
        H(s, s) = d;
    }
    for (auto [i, j] : bonds(p))
        for (int spin = 0; spin < 2; ++spin) {
            const auto& ci = site_ops_[2 * i + spin];
            const auto& cj = site_ops_[2 * j + spin];
            Eigen::MatrixXd hop = ci.transpose() * cj;
            H += p.t * (hop + hop.transpose());
        }
    // block diagonalization by (N_up, N_dn)
    std::map<std::pair<int, int>, std::vector<int>> sectors;
    for (int s = 0; s < dim; ++s) {
        int up = 0, dn = 0;
        for (int i = 0; i < sites_; ++i) up += s >> (2 * i) & 1, dn += s >> (2 * i + 1) & 1;
        sectors[{up, dn}].push_back(s);
    }
    V_ = Eigen::MatrixXd::Zero(dim, dim);
    E_.resize(dim);
    int col = 0;
    for (const auto& [key, idx] : sectors) {
        const int k = static_cast<int>(idx.size());
        Eigen::MatrixXd block(k, k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) block(a, b) = H(idx[a], idx[b]);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
        for (int c = 0; c < k; ++c) {
            E_(col + c) = es.eigenvalues()(c);
            for (int a = 0; a < k; ++a) V_(idx[a], col + c) = es.eigenvectors()(a, c);
        }
        col += k;
    }
    w_ = (-(E_.array() - E_.minCoeff()) * p.beta).exp();
    w_ /= w_.sum();
    for (int m = 0; m < modes; ++m) ct_.push_back(V_.transpose() * site_ops_[m] * V_);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            for (int m = 0; m < modes; ++m)
                if (std::abs(ct_[m](a, b)) > 1e-14) {
                    active_.emplace_back(a, b);
                    break;
                }
}

double HubbardED::density(int i, int spin) const { return pair_density(i, i, spin); }

double HubbardED::pair_density(int i, int j, int spin) const {
    const auto& ci = site_ops_[2 * i + spin];
    const auto& cj = site_ops_[2 * j + spin];
    Eigen::MatrixXd op = ci.transpose() * ci * cj.transpose() * cj;
    Eigen::MatrixXd rot = V_.transpose() * op * V_;
    return (rot.diagonal().array() * w_.array()).sum();
}

HubbardParams HubbardED::with_ed_densities(int spin) const {
    HubbardParams q = p_;
    q.n.clear();
    q.nn.clear();
    for (int i = 0; i < sites_; ++i) {
        q.n.push_back(density(i, spin));
        q.nn.push_back(pair_density(i, (i + 1) % sites_, spin));
    }
    return q;
}

std::vector<Mat> HubbardED::moments(int order, int spin) const {
    std::vector<Mat> D(order + 1, Mat::Zero(sites_, sites_));
    for (auto [a, b] : active_) {
        double wt = w_(a) + w_(b);
        cplx iw = I1 * (E_(a) - E_(b));
        for (int i = 0; i < sites_; ++i) {
            double ci = ct_[2 * i + spin](a, b);
            if (ci == 0) continue;
            for (int j = 0; j < sites_; ++j) {
                double base = wt * ci * ct_[2 * j + spin](a, b);
                if (base == 0) continue;
                cplx pw = 1;
                for (int k = 0; k <= order; ++k) {
                    D[k](i, j) += base * pw;
                    pw *= iw;
                }
            }
        }
    }
    return D;
}

std::vector<Mat> HubbardED::correlation(double h, int steps, int spin) const {
    const int modes = spin < 0 ? 2 * sites_ : sites_;
    auto mode = [&](int i) { return spin < 0 ? i : 2 * i + spin; };
    std::vector<Mat> C(steps + 1, Mat::Zero(modes, modes));
    for (auto [a, b] : active_) {
        double wt = w_(a) + w_(b);
        cplx step = std::exp(I1 * (E_(a) - E_(b)) * h);
        for (int i = 0; i < modes; ++i) {
            double ci = ct_[mode(i)](a, b);
            if (ci == 0) continue;
            for (int j = 0; j < modes; ++j) {
                double base = wt * ci * ct_[mode(j)](a, b);
                if (base == 0) continue;
                cplx ph = 1;
                for (int n = 0; n <= steps; ++n) {
                    C[n](i, j) += base * ph;
                    ph *= step;
                }
            }
        }
    }
    return C;
}

std::vector<Mat> HubbardED::greens(double h, int steps, int spin) const {
    auto C = correlation(h, steps, spin);
    for (auto& c : C) c = (-I1 * c.transpose()).eval();
    return C;
}

double HubbardED::car_residual() const {
    const int modes = 2 * sites_;
    const int dim = fock_dim();
    double worst = 0;
    for (int a = 0; a < modes; ++a)
        for (int b = 0; b < modes; ++b) {
            const auto& ca = site_ops_[a];
            const auto& cb = site_ops_[b];
            Eigen::MatrixXd anti = ca * cb.transpose() + cb.transpose() * ca;
            if (a == b) anti -= Eigen::MatrixXd::Identity(dim, dim);
            Eigen::MatrixXd both = ca * cb + cb * ca;
            worst = std::max({worst, anti.norm(), both.norm()});
        }
    return worst;
}

double HubbardED::omega_norm() const {
    Eigen::JacobiSVD<Mat> svd(hubbard_omega(with_ed_densities()));
    return svd.singularValues()(0);
}

std::vector<Mat> hubbard_exact_kernel(const HubbardED& ed, double h, int steps, int terms, int spin) {
    if (terms < 1 || terms > 60) throw std::invalid_argument("kernel Taylor terms must be in [1, 60]");
    auto Kt = kernel_taylor(ed.moments(terms + 1, spin), terms);
    std::vector<Mat> K;
    K.reserve(steps + 1);
    for (int j = 0; j <= steps; ++j) {
        double s = j * h, c = 1;
        Mat acc = Mat::Zero(ed.sites(), ed.sites());
        for (int k = 0; k < terms; ++k) {
            acc += Kt[k] * c;
            c *= s / (k + 1);
        }
        K.push_back(acc);
    }
    return K;
}

// ---------------- Langevin ----------------

void GLEInputs::validate() const {
    if (m <= 0 || gamma <= 0 || beta <= 0) throw std::invalid_argument("m, gamma and beta must be positive");
}

GLECoeffs langevin_coeffs(const GLEInputs& g) {
    g.validate();
    const double m = g.m, y = g.gamma;
    GLECoeffs c;
    c.Omega = -y / m;
    c.f0 = -g.V2 / m;
    c.f1 = 0;
    c.f2 = (-1 / (m * m) + 1 / y - 1 / m) * g.V2 + (2 / (m * y) + 1 / (y * y)) * g.V2 * g.V2 + m / (y * y) * g.V1V2 +
           g.V3 / (m * y) + 2 * y * y / (m * m) - y / (m * m);
    return c;
}

KolmogorovOracle::KolmogorovOracle(double m, double gamma, double beta, std::vector<double> potential, double qmax,
                                   int nodes)
    : m_(m), gamma_(gamma), beta_(beta), V_(std::move(potential)) {
    if (m <= 0 || gamma <= 0 || beta <= 0) throw std::invalid_argument("m, gamma and beta must be positive");
    if (V_.size() < 3 || V_.back() <= 0 || (V_.size() - 1) % 2)
        throw std::invalid_argument("potential must be an even-degree polynomial with positive leading coefficient");
    double vmin = 1e300;
    for (int k = 0; k < nodes; ++k) {
        double q = -qmax + 2 * qmax * k / (nodes - 1);
        q_.push_back(q);
        vmin = std::min(vmin, deriv(0, q));
    }
    double Z = 0;
    for (double q : q_) {
        weight_.push_back(std::exp(-beta_ * (deriv(0, q) - vmin)));
        Z += weight_.back();
    }
    for (double& w : weight_) w /= Z;
}

double KolmogorovOracle::deriv(int k, double q) const {
    double acc = 0;
    for (int j = static_cast<int>(V_.size()) - 1; j >= k; --j) {
        double fall = 1;
        for (int r = 0; r < k; ++r) fall *= j - r;
        acc = acc * q + V_[j] * fall;
    }
    return acc;
}

double KolmogorovOracle::average_derivative_product(const std::vector<int>& orders) const {
    double acc = 0;
    for (std::size_t i = 0; i < q_.size(); ++i) {
        double v = weight_[i];
        for (int k : orders) v *= deriv(k, q_[i]);
        acc += v;
    }
    return acc;
}

std::vector<double> KolmogorovOracle::gammas(int count) const {
    // terms p^j * prod V^(k), keyed by (j, sorted orders)
    using Key = std::pair<int, std::vector<int>>;
    std::map<Key, double> f{{{1, {}}, 1.0}};
    auto push = [](std::map<Key, double>& g, int j, std::vector<int> ks, double c) {
        if (c == 0) return;
        std::sort(ks.begin(), ks.end());
        g[{j, ks}] += c;
    };
    std::vector<double> out;
    for (int n = 0; n < count; ++n) {
        std::map<Key, double> g;
        for (const auto& [key, c] : f) {
            const auto& [j, ks] = key;
            for (std::size_t r = 0; r < ks.size(); ++r) {
                auto k2 = ks;
                k2[r] += 1;
                push(g, j + 1, k2, c / m_);
            }
            if (j >= 1) {
                auto k2 = ks;
                k2.push_back(1);
                push(g, j - 1, k2, -c * j);
                push(g, j, ks, -c * j * gamma_ / m_);
            }
            if (j >= 2) push(g, j - 2, ks, c * j * (j - 1) * gamma_ / beta_);
        }
        f = std::move(g);
        // <p^{j+1}> <prod> / <p^2>
        double acc = 0, var = m_ / beta_;
        for (const auto& [key, c] : f) {
            int e = key.first + 1;
            if (e % 2) continue;
            double mom = 1;
            for (int r = 1; r < e; r += 2) mom *= r * var;
            acc += c * mom * average_derivative_product(key.second);
        }
        out.push_back(acc / var);
    }
    return out;
}

GLECoeffs KolmogorovOracle::coeffs() const {
    auto g = gammas(4);
    std::vector<cplx> gc(g.begin(), g.end());
    auto L = laurent_fk(2, false);
    GLECoeffs c;
    c.Omega = g[0];
    c.f0 = eval_gamma_poly(L[0], gc).real();
    c.f1 = eval_gamma_poly(L[1], gc).real();
    c.f2 = eval_gamma_poly(L[2], gc).real();
    return c;
}

GLEInputs KolmogorovOracle::inputs() const {
    GLEInputs in{m_, gamma_, beta_};
    in.V2 = average_derivative_product({2});
    in.V3 = average_derivative_product({3});
    in.V1V2 = average_derivative_product({1, 2});
    return in;
}

double gle_f2_oracle_form(double gamma, double V2, double V2sq) { return (V2sq - V2 * V2) / (gamma * gamma); }

// ---------------- mode coupling ----------------

void MCTInputs::validate() const {
    if (S <= 0) throw std::invalid_argument("S(|q|) must be positive");
    if (q == 0) throw std::invalid_argument("q must be nonzero");
    if (N <= 0 || m <= 0 || kT <= 0) throw std::invalid_argument("N, m and k_BT must be positive");
}

MCTCoeffs mct_coeffs(const MCTInputs& in) {
    in.validate();
    MCTCoeffs c;
    const double q2 = in.q * in.q;
    c.w0_sq = -in.m / (in.N * in.kT) * in.J1 + q2 * in.kT / (in.m * in.S);
    c.w2_sq = -(in.m * in.m * in.S) / (q2 * in.kT * in.kT * in.N) * (in.J2 - in.m / (in.N * in.kT) * in.J1 * in.J1);
    c.iOmega = Mat::Zero(2, 2);
    c.iOmega(0, 1) = -I1 * in.q;
    c.iOmega(1, 0) = -I1 * in.q * in.kT / (in.m * in.S);
    return c;
}

std::vector<Mat> mct_moments(const MCTInputs& in) {
    in.validate();
    // Gram moments (A, (iL)^n A) with rho' = -i q j, scaled row-wise by (A, A)^{-1}
    const double NS = in.N * in.S, Jn = in.N * in.kT / in.m, q = in.q;
    std::vector<Mat> D(5, Mat::Zero(2, 2));
    D[0] = Mat::Identity(2, 2);
    D[1](0, 1) = -I1 * q * Jn / NS;
    D[1](1, 0) = -I1 * q;
    D[2](0, 0) = -q * q * Jn / NS;
    D[2](1, 1) = -in.J1 / Jn;
    D[3](0, 1) = I1 * q * in.J1 / NS;
    D[3](1, 0) = I1 * q * in.J1 / Jn;
    D[4](0, 0) = q * q * in.J1 / NS;
    D[4](1, 1) = in.J2 / Jn;
    return D;
}

// ---------------- second Born ----------------

Trajectory kbe_second_born(const HubbardParams& p, double h, int steps) {
    Mat H0 = hubbard_omega(p);
    const int N = p.sites;
    const double U2 = p.U * p.U;
    Mat C0 = -I1 * Mat::Identity(N, N);
    Mat Om = -I1 * H0.transpose();
    // C = G^T, K = -i Sigma^T
    auto tr = solve_volterra(C0, Om, [&](int, const Mat& C) {
        Mat G = C.transpose();
        Mat S = U2 * G.cwiseProduct(G).cwiseProduct(G.conjugate());
        return Mat(-I1 * S.transpose());
    }, h, steps);
    for (auto& c : tr.C) c = c.transpose().eval();
    return tr;
}

} // namespace cmze
