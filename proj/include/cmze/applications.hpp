#pragma once
// Physics inputs: Hubbard chain, Langevin particle, mode coupling, second Born.

#include <vector>

#include "cmze/numerics.hpp"
#include "cmze/operator_lab.hpp"

namespace cmze {

// ---- Hubbard chain ----
struct HubbardParams {
    int sites = 4;
    double eps0 = 0, mu = 0, t = 1, U = 1;
    std::vector<double> n;  // <n_{i,sbar}> per site
    std::vector<double> nn; // <n_{i,sbar} n_{i+1,sbar}> per bond, used by a_{+-1}^3
    bool periodic = true;
    double beta = 1;

    double e() const { return eps0 - mu; }
    double dens(int i) const;
    double pair(int i) const; // bond (i, i+1)
    void validate() const;
};

// a_k^n at row site i, from the closed forms (a_0^2 with the 2U(eps0-mu)<n> term)
cplx hubbard_a(const HubbardParams& p, int n, int k, int i);
// D_0 = I .. D_order (order <= 3); periodic chains sum every offset that wraps onto an entry
std::vector<Mat> hubbard_moments_formula(const HubbardParams& p, int order);
Mat hubbard_omega(const HubbardParams& p); // H_0 + U<n> on the diagonal

struct HubbardScalar {
    double Omega = 0;
    cplx f0, f1;
};
// the closed forms as displayed
HubbardScalar hubbard_scalar_display(const HubbardParams& p, int site = 0);
// L_0, L_1 of gamma_j = a_0^{j+1}
HubbardScalar hubbard_scalar_moments(const HubbardParams& p, int site = 0);

struct Omega01 {
    Mat Omega0, Omega1;
};
// F_0, F_1 with b_i -> D_i
Omega01 hubbard_omega01(const std::vector<Mat>& D);
// the alternative reading that sets D_1 = I inside F_1
Mat omega1_unit_reading(const std::vector<Mat>& D);

// full Fock-space diagonalization, modes ordered (site, spin) -> 2 site + spin
class HubbardED {
  public:
    explicit HubbardED(const HubbardParams& p);
    int sites() const { return sites_; }
    int fock_dim() const { return static_cast<int>(E_.size()); }
    double density(int i, int spin) const;
    double pair_density(int i, int j, int spin) const;
    HubbardParams with_ed_densities(int spin = 1) const;
    // (c_{i s}|(iL)^k c_{j s'}) for k = 0..order
    std::vector<Mat> moments(int order, int spin = 0) const;
    // (c_i|e^{itL} c_j) between modes a, b; full 2N x 2N when spin < 0
    std::vector<Mat> correlation(double h, int steps, int spin = 0) const;
    // -i C^T
    std::vector<Mat> greens(double h, int steps, int spin = 0) const;
    double car_residual() const; // {c_a, c_b^dag} - delta in the site basis
    double omega_norm() const;

  private:
    HubbardParams p_;
    int sites_;
    Eigen::VectorXd E_, w_;
    std::vector<Eigen::MatrixXd> ct_;      // c_a in the eigenbasis
    std::vector<Eigen::MatrixXd> site_ops_; // c_a in the occupation basis
    Eigen::MatrixXd V_;
    std::vector<std::pair<int, int>> active_;

    cplx pairing(int a, int b, const std::function<cplx(double)>& phase) const;
};

// K(jh) for j = 0..steps from the Taylor series of the exact kernel, with ED moments
std::vector<Mat> hubbard_exact_kernel(const HubbardED& ed, double h, int steps, int terms = 38, int spin = 0);

// ---- Langevin particle ----
struct GLEInputs {
    double m = 1, gamma = 1, beta = 1;
    double V2 = 0, V3 = 0, V1V2 = 0; // <V''>, <V'''>, <V' V''>
    void validate() const;
};
struct GLECoeffs {
    double Omega = 0, f0 = 0, f1 = 0, f2 = 0;
};
GLECoeffs langevin_coeffs(const GLEInputs& g); // the displayed closed forms

// one particle in a polynomial potential; moments of the Kolmogorov backward operator
class KolmogorovOracle {
  public:
    // V(q) = sum_k coeffs[k] q^k; Gibbs averages by quadrature on [-qmax, qmax]
    KolmogorovOracle(double m, double gamma, double beta, std::vector<double> potential, double qmax = 12,
                     int nodes = 4001);
    // gamma_n = <K^{n+1} p, p> / <p^2>
    std::vector<double> gammas(int count) const;
    double average_derivative_product(const std::vector<int>& orders) const; // <prod V^(k)>
    GLECoeffs coeffs() const; // L_0..L_2 of the oracle moments
    GLEInputs inputs() const;

  private:
    double m_, gamma_, beta_;
    std::vector<double> V_;
    std::vector<double> q_, weight_;
    double deriv(int k, double q) const;
};
// closed form matched to the oracle: f2 = (<V''^2> - <V''>^2) / gamma^2
double gle_f2_oracle_form(double gamma, double V2, double V2sq);

// ---- mode coupling ----
struct MCTInputs {
    double q = 1, S = 1, N = 1, m = 1, kT = 1;
    double J1 = 0; // <(dj/dt)^2>
    double J2 = 0; // <(d^2 j/dt^2)^2>
    void validate() const;
    MCTParams params() const { return MCTParams{q, S, N, m, kT}; }
};
struct MCTCoeffs {
    double w0_sq = 0, w2_sq = 0;
    Mat iOmega; // in the displayed row convention
};
MCTCoeffs mct_coeffs(const MCTInputs& in);
// D_0 = I .. D_4 in the column convention of the operator lab
std::vector<Mat> mct_moments(const MCTInputs& in);

// ---- second Born ----
// i G' = H_0 G + U^2 int (G o G o conj G)(t - s) G(s) ds
Trajectory kbe_second_born(const HubbardParams& p, double h, int steps);

} // namespace cmze
