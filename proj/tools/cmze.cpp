// cmze command line: symbolic emitters, oracle checks, trajectory runs.

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cmze/applications.hpp"
#include "cmze/config.hpp"
#include "cmze/trees.hpp"

using namespace cmze;
using nlohmann::json;

namespace {

struct Failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double x) { return fmt::format("{:.12e}", x); }

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

json mjson(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(cjson(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json cpoly_json(const CPoly& p) {
    json j = json::object();
    auto part = [](const mpz_class& z) -> json { return z.fits_slong_p() ? json(z.get_si()) : json(z.get_str()); };
    for (const auto& [m, c] : p.terms()) j[render(CPoly(m, 1))] = json::array({part(c.get_num()), part(c.get_den())});
    return j;
}

json ladder_json(const Ladder& F) {
    json j = json::array();
    for (const auto& f : F) j.push_back(to_json(f));
    return j;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write '" + out + "'");
    f << text;
}

std::string csv(const std::vector<Mat>& traj, double h, const std::string& name) {
    std::ostringstream o;
    o << "t";
    const int r = traj.empty() ? 0 : static_cast<int>(traj[0].rows());
    const int c = traj.empty() ? 0 : static_cast<int>(traj[0].cols());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) o << ",re_" << name << i << j << ",im_" << name << i << j;
    o << "\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        o << num(k * h);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) o << "," << num(traj[k](i, j).real()) << "," << num(traj[k](i, j).imag());
        o << "\n";
    }
    return o.str();
}

Config load_config(const std::string& path, std::set<std::string> allowed) {
    Config cfg = Config::load(path);
    cfg.restrict_to(allowed);
    return cfg;
}

std::vector<cplx> complex_list(const Config& cfg, const std::string& re, const std::string& im) {
    auto r = cfg.array(re);
    auto i = cfg.array(im, std::vector<double>(r.size(), 0.0));
    if (i.size() != r.size()) throw ConfigError("'" + re + "' and '" + im + "' differ in length");
    std::vector<cplx> out;
    for (std::size_t k = 0; k < r.size(); ++k) out.emplace_back(r[k], i[k]);
    return out;
}

int positive(const Config& cfg, const std::string& key) {
    int v = cfg.integer(key);
    if (v <= 0) throw ConfigError("'" + key + "' must be positive");
    return v;
}

double step(const Config& cfg) {
    double h = cfg.number("h");
    if (!(h > 0)) throw ConfigError("'h' must be positive");
    return h;
}

// skew scalar systems have D_1 = 0; the case-2 Laurent ladder drives them
std::vector<cplx> skew_fk(const OperatorSystem& sys, int N) {
    auto g = gammas(moments(sys, 2 * N + 4));
    std::vector<cplx> f;
    for (const auto& p : laurent_fk(N, true, SkewRule::Taylor)) f.push_back(eval_gamma_poly(p, g));
    return f;
}

// ---------------- symbolic ----------------

void cmd_poly(const std::string& fam, int n, int k, const std::string& format) {
    Family f = parse_family(fam);
    if (f == Family::Bell || f == Family::CBipart) {
        CPoly p = c_family(f, n, k);
        std::cout << (format == "json" ? cpoly_json(p).dump() : render(p)) << "\n";
        return;
    }
    NCPoly p = nc_family(f, n, k, f == Family::NCBipart ? ALPHA_B : ALPHA_A);
    std::cout << (format == "json" ? to_json(p).dump() : render(p)) << "\n";
}

void cmd_trees(const std::string& fam, int n, const std::string& format) {
    std::vector<Forest> forests;
    if (fam == "fsolution") {
        forests = tree_solution_F(n);
    } else {
        forests.push_back(forest_family(parse_tree_family(fam), n));
    }
    if (format == "json") {
        json j = json::array();
        for (const auto& f : forests) j.push_back(forest_json(f));
        std::cout << (fam == "fsolution" ? j : j[0]).dump() << "\n";
        return;
    }
    for (std::size_t i = 0; i < forests.size(); ++i) {
        if (fam == "fsolution") std::cout << "F" << i << "\n";
        std::cout << render_ascii(forests[i]);
    }
}

void print_ladder(const Ladder& F, const std::string& name, const std::string& format) {
    if (format == "json") {
        std::cout << ladder_json(F).dump() << "\n";
        return;
    }
    for (std::size_t i = 0; i < F.size(); ++i) std::cout << name << i << " = " << render(F[i]) << "\n";
}

Family word_family(const std::string& name) {
    Family f = parse_family(name);
    if (f == Family::Bell || f == Family::CBipart)
        throw std::invalid_argument("word equations need a noncommutative family, got '" + name + "'");
    return f;
}

// ---------------- verify ----------------

json cmd_verify(const std::string& check, int dim, int rank, std::uint64_t seed, int order) {
    json j{{"check", check}, {"dim", dim}, {"rank", rank}, {"seed", seed}, {"order", order}};
    bool ok = true;
    if (check == "bipart") {
        auto sys = random_system(dim, rank, seed);
        json r = json::array();
        double worst = 0;
        for (int n = 0; n <= order; ++n) {
            double e = verify_bipartition_identity(sys, n + 2);
            r.push_back(e);
            worst = std::max(worst, e);
        }
        j["residuals"] = r;
        j["max"] = worst;
        ok = worst < 1e-10;
    } else if (check == "kernel") {
        auto sys = random_system(dim, rank, seed);
        auto Phi = evaluate_ladder(operator_F(order), moments(sys, order + 2));
        json r = json::array();
        for (int N = 0; N <= order; ++N) {
            auto e = verify_kernel_expansion(sys, Phi, N, 0.2);
            r.push_back({{"N", N}, {"max_dev", e.max_dev}, {"exponent", e.exponent}});
            ok = ok && e.exponent >= N + 1 - 0.3;
        }
        j["truncations"] = r;
    } else if (check == "dyson") {
        auto sys = random_system(dim, rank, seed);
        double e = dyson_residual(sys, 1.0, 1e-2);
        j["t"] = 1.0;
        j["residual"] = e;
        ok = e < 1e-8;
    } else if (check == "skew") {
        auto sys = skew_system(dim, seed);
        auto g = gammas(moments(sys, std::min(2 * order + 2, 16)));
        double even = 0;
        for (std::size_t i = 0; i < g.size(); i += 2) even = std::max(even, std::abs(g[i]));
        j["rank"] = 1;
        j["max_even_gamma"] = even;
        j["max_re_odd_moment"] = skew_odd_moments(sys, std::min(2 * order + 1, 15));
        ok = even < 1e-10;
    } else {
        throw std::invalid_argument("unknown check '" + check + "'");
    }
    j["pass"] = ok;
    return j;
}

// ---------------- simulate ----------------

const std::set<std::string> kScalarKeys{"h",      "steps",  "omega",  "omega_im", "f",    "f_im",
                                        "order",  "mode",   "pade_m", "pade_n",   "basis"};
const std::set<std::string> kSystemKeys{"h", "steps", "dim", "rank", "seed", "order", "system"};
const std::set<std::string> kMctKeys{"h", "steps", "q", "S", "N", "m", "kT", "J1", "J2", "w0_sq", "w2_sq"};

std::string sim_scalar(const Config& cfg) {
    double h = step(cfg);
    int steps = positive(cfg, "steps");
    cplx Omega(cfg.number("omega", 0), cfg.number("omega_im", 0));
    auto f = complex_list(cfg, "f", "f_im");
    int N = cfg.integer("order", static_cast<int>(f.size()) - 1);
    if (N < 0 || N >= static_cast<int>(f.size())) throw ConfigError("'order' exceeds the coefficient list");
    f.resize(N + 1);
    std::string mode = cfg.string("mode", "power_series");
    ScalarKernel K;
    if (mode == "power_series") {
        K = power_series_kernel(f, N);
    } else if (mode == "pade") {
        int m = cfg.integer("pade_m", N), n = cfg.integer("pade_n", 0);
        if (m < 0 || n < 0 || m + n > N) throw ConfigError("need pade_m + pade_n <= order");
        K = pade_kernel(pade_from_series(f, m, n));
    } else if (mode == "orthogonal") {
        Basis b = parse_basis(cfg.string("basis", "chebyshev"));
        K = orthogonal_kernel(orthogonal_coeffs(f, b), b);
    } else {
        throw ConfigError("unknown mode '" + mode + "'");
    }
    auto tr = solve_scalar_cmze(Omega, K, h, steps);
    return csv(tr.C, h, "C");
}

std::string sim_system(const Config& cfg, bool given) {
    double h = step(cfg);
    int steps = positive(cfg, "steps");
    int dim = positive(cfg, "dim");
    auto seed = static_cast<std::uint64_t>(cfg.integer("seed", 1));
    int N = cfg.integer("order", 2);
    check_order(N);
    std::string kind = cfg.string("system", "random");
    if (kind == "skew") {
        if (cfg.has("rank") && cfg.integer("rank") != 1) throw ConfigError("skew systems have rank 1");
        auto sys = skew_system(dim, seed);
        if (given) {
            Mat C0 = Mat::Identity(1, 1);
            auto tr = solve_given_kernel(Mat::Zero(1, 1), exact_kernel(sys, h, steps), C0, h, steps);
            return csv(tr.C, h, "C");
        }
        return csv(solve_scalar_cmze(0, power_series_kernel(skew_fk(sys, N), N), h, steps).C, h, "C");
    }
    if (kind != "random") throw ConfigError("unknown system '" + kind + "'");
    int rank = cfg.integer("rank", 1);
    auto sys = random_system(dim, rank, seed);
    auto D = moments(sys, std::max(N, 0) + 2);
    Mat C0 = Mat::Identity(rank, rank);
    if (given) return csv(solve_given_kernel(D[1], exact_kernel(sys, h, steps), C0, h, steps).C, h, "C");
    auto Phi = evaluate_ladder(operator_F(N), D);
    return csv(solve_matrix_cmze(D[1], Phi, N, C0, h, steps).C, h, "C");
}

MCTInputs mct_inputs(const Config& cfg) {
    MCTInputs in;
    in.q = cfg.number("q", in.q);
    in.S = cfg.number("S", in.S);
    in.N = cfg.number("N", in.N);
    in.m = cfg.number("m", in.m);
    in.kT = cfg.number("kT", in.kT);
    in.J1 = cfg.number("J1", in.J1);
    in.J2 = cfg.number("J2", in.J2);
    in.validate();
    return in;
}

std::pair<MCTInputs, MCTCoeffs> mct_setup(const Config& cfg) {
    auto in = mct_inputs(cfg);
    MCTCoeffs c = mct_coeffs(in);
    c.w0_sq = cfg.number("w0_sq", c.w0_sq);
    c.w2_sq = cfg.number("w2_sq", c.w2_sq);
    return {in, c};
}

std::string sim_mct(const Config& cfg) {
    double h = step(cfg);
    int steps = positive(cfg, "steps");
    auto [in, c] = mct_setup(cfg);
    auto tr = solve_mct(c.w0_sq, c.w2_sq, in.params(), h, steps);
    std::ostringstream o;
    o << "t,F,dF\n";
    for (int k = 0; k <= tr.steps(); ++k)
        o << num(k * h) << "," << num(tr.C[k](0, 0).real()) << "," << num(tr.dC[k](0, 0).real()) << "\n";
    return o.str();
}

// ---------------- physics ----------------

const std::set<std::string> kHubbardKeys{"sites", "eps0", "mu",  "t",     "U",    "beta",  "periodic",
                                         "n",     "nn",   "h",   "steps", "spin", "terms", "moments"};

HubbardParams hubbard_params(const Config& cfg) {
    HubbardParams p;
    p.sites = cfg.integer("sites", p.sites);
    p.eps0 = cfg.number("eps0", p.eps0);
    p.mu = cfg.number("mu", p.mu);
    p.t = cfg.number("t", p.t);
    p.U = cfg.number("U", p.U);
    p.beta = cfg.number("beta", p.beta);
    p.periodic = cfg.boolean("periodic", p.periodic);
    p.n = cfg.array("n", {});
    p.nn = cfg.array("nn", {});
    return p;
}

// densities from the exact diagonalization unless the config lists them
HubbardParams with_densities(const HubbardParams& p, const HubbardED* ed) {
    if (!p.n.empty() || !ed) return p;
    HubbardParams q = ed->with_ed_densities(1);
    return q;
}

std::string hubbard_run(const std::string& mode, const Config& cfg) {
    HubbardParams p = hubbard_params(cfg);
    int spin = cfg.integer("spin", 0);
    if (spin != 0 && spin != 1) throw ConfigError("'spin' must be 0 or 1");
    if (mode == "coeffs") {
        std::unique_ptr<HubbardED> ed;
        if (p.sites <= 4) ed = std::make_unique<HubbardED>(p);
        HubbardParams q = with_densities(p, ed.get());
        q.validate();
        auto D = hubbard_moments_formula(q, 3);
        auto disp = hubbard_scalar_display(q);
        auto mom = hubbard_scalar_moments(q);
        auto om = hubbard_omega01(D);
        json j{{"Omega", mjson(hubbard_omega(q))},
               {"D", json::array({mjson(D[1]), mjson(D[2]), mjson(D[3])})},
               {"Omega0", mjson(om.Omega0)},
               {"Omega1", mjson(om.Omega1)},
               {"scalar_display", {{"Omega", disp.Omega}, {"f0", cjson(disp.f0)}, {"f1", cjson(disp.f1)}}},
               {"scalar_moments", {{"Omega", mom.Omega}, {"f0", cjson(mom.f0)}, {"f1", cjson(mom.f1)}}}};
        if (ed) {
            auto De = ed->moments(3, spin);
            j["ed_D"] = json::array({mjson(De[1]), mjson(De[2]), mjson(De[3])});
        }
        return j.dump(2) + "\n";
    }
    double h = step(cfg);
    int steps = positive(cfg, "steps");
    if (mode == "kbe") {
        std::unique_ptr<HubbardED> ed;
        if (p.n.empty()) ed = std::make_unique<HubbardED>(p);
        HubbardParams q = with_densities(p, ed.get());
        return csv(kbe_second_born(q, h, steps).C, h, "G");
    }
    HubbardED ed(p);
    if (mode == "ed") return csv(ed.greens(h, steps, spin), h, "G");
    if (mode != "matrix-cmze") throw std::invalid_argument("unknown hubbard mode '" + mode + "'");
    std::string source = cfg.string("moments", "ed");
    std::vector<Mat> D;
    if (source == "ed") {
        D = ed.moments(3, spin);
    } else if (source == "formula") {
        HubbardParams q = with_densities(p, &ed);
        q.validate();
        D = hubbard_moments_formula(q, 3);
    } else {
        throw ConfigError("'moments' must be \"ed\" or \"formula\"");
    }
    auto om = hubbard_omega01(D);
    Mat I = Mat::Identity(p.sites, p.sites);
    auto tr = solve_matrix_cmze(D[1], {om.Omega0, om.Omega1}, 1, I, h, steps);
    std::vector<Mat> G;
    for (const auto& C : tr.C) G.push_back(cplx(0, -1) * C.transpose());
    return csv(G, h, "G");
}

std::string gle_run(const Config& cfg) {
    double m = cfg.number("m"), gamma = cfg.number("gamma"), beta = cfg.number("beta");
    json j;
    auto put = [](const GLECoeffs& c) {
        return json{{"Omega", c.Omega}, {"f0", c.f0}, {"f1", c.f1}, {"f2", c.f2}};
    };
    if (cfg.has("potential")) {
        for (auto k : {"V2", "V3", "V1V2"})
            if (cfg.has(k)) throw ConfigError(std::string("'") + k + "' conflicts with 'potential'");
        KolmogorovOracle o(m, gamma, beta, cfg.array("potential"));
        GLEInputs in = o.inputs();
        double V2sq = o.average_derivative_product({2, 2});
        j["inputs"] = {{"V2", in.V2}, {"V3", in.V3}, {"V1V2", in.V1V2}, {"V2sq", V2sq}};
        j["display"] = put(langevin_coeffs(in));
        j["oracle"] = put(o.coeffs());
        j["f2_oracle_form"] = gle_f2_oracle_form(gamma, in.V2, V2sq);
    } else {
        GLEInputs in{m, gamma, beta, cfg.number("V2", 0), cfg.number("V3", 0), cfg.number("V1V2", 0)};
        in.validate();
        j["display"] = put(langevin_coeffs(in));
    }
    return j.dump(2) + "\n";
}

std::string mct_run(const Config& cfg) {
    auto [in, c] = mct_setup(cfg);
    json j{{"w0_sq", c.w0_sq}, {"w2_sq", c.w2_sq}, {"linear", in.params().linear()}, {"iOmega", mjson(c.iOmega)}};
    return j.dump(2) + "\n";
}

CLI::App* add(CLI::App& app, const std::string& name, const std::string& what) {
    auto* s = app.add_subcommand(name, what);
    s->fallthrough(false);
    return s;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cmze: combinatorial Mori-Zwanzig toolkit"};
    app.require_subcommand(1);

    std::string family, format = "text", out, config, check, model, rule = "taylor", qb = "bipart",
                                qa = "ncbell1";
    int n = 0, k = -1, order = 2, m = 0, wcase = 1, dim = 8, rank = 1;
    std::uint64_t seed = 1;
    bool skew = false, prime = false;
    const std::vector<std::string> formats{"text", "json"};

    auto* poly = add(app, "poly", "emit a Bell-type polynomial");
    poly->add_option("--family", family, "bell|ncbell1|ncbell2|bipart|cbipart")->required();
    poly->add_option("--n", n, "order")->required();
    poly->add_option("--k", k, "partial polynomial with k letters");
    poly->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* trees = add(app, "trees", "emit a weighted forest");
    trees->add_option("--family", family, "type1|type2|bipart|fsolution")->required();
    trees->add_option("--n", n, "order")->required();
    std::string tformat = "ascii";
    trees->add_option("--format", tformat)->check(CLI::IsMember({"ascii", "json"}));

    auto* sw = add(app, "solve-words", "solve Q^b_{n+m} = sum_k f_k Q^a_{n,k} for the f_k");
    sw->add_option("--case", wcase, "1 or 2")->check(CLI::IsMember({1, 2}));
    sw->add_option("--qb", qb, "bipart|ncbell1|ncbell2");
    sw->add_option("--qa", qa, "bipart|ncbell1|ncbell2");
    sw->add_option("--m", m, "order shift")->check(CLI::NonNegativeNumber);
    sw->add_option("--order", order)->required();
    sw->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* fk = add(app, "fk", "scalar Laurent coefficients in the moments g_j");
    fk->add_option("--order", order)->required();
    fk->add_flag("--skew", skew, "odd moments only");
    fk->add_option("--rule", rule, "skew expansion rule: taylor|shifted")->check(CLI::IsMember({"taylor", "shifted"}));
    fk->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* opf = add(app, "operator-f", "operator kernel ladder F_n");
    opf->add_option("--order", order)->required();
    opf->add_flag("--prime", prime, "skew variant F'_n");
    opf->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* td = add(app, "td-fg", "time-dependent ladders F_n(s), G_m(t)");
    td->add_option("--order", order)->required();
    td->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* knm = add(app, "knm", "scalar k_{n,m} for a rank-one projection");
    knm->add_option("--n", n)->required();
    knm->add_option("--m", m)->required();

    auto* ver = add(app, "verify", "operator identity checks, JSON residuals; exit 1 when a check fails");
    ver->add_option("--check", check)->required()->check(CLI::IsMember({"bipart", "kernel", "dyson", "skew"}));
    ver->add_option("--dim", dim)->check(CLI::Range(2, 64));
    ver->add_option("--rank", rank)->check(CLI::Range(1, 8));
    ver->add_option("--seed", seed);
    ver->add_option("--order", order)->check(CLI::Range(0, 10));

    auto* sim = add(app, "simulate", "integrate a CMZE and write a CSV trajectory");
    sim->add_option("--model", model)->required()->check(
        CLI::IsMember({"scalar", "matrix", "mct", "given-kernel"}));
    sim->add_option("--config", config, "TOML file")->required();
    sim->add_option("--out", out, "CSV path, stdout when omitted");

    auto* hub = add(app, "hubbard", "Hubbard chain: closed forms, CMZE, exact diagonalization, second Born");
    hub->require_subcommand(1);
    std::string hmode;
    for (const char* name : {"coeffs", "matrix-cmze", "ed", "kbe"}) {
        auto* s = hub->add_subcommand(name, std::string("hubbard ") + name);
        s->add_option("--config", config, "TOML file")->required();
        s->add_option("--out", out, "output path, stdout when omitted");
        s->callback([&hmode, name] { hmode = name; });
    }

    auto* gle = add(app, "gle", "Langevin particle kernel coefficients (JSON)");
    gle->add_option("--config", config, "TOML file")->required();
    gle->add_option("--out", out);

    auto* mct = add(app, "mct", "mode-coupling coefficients (JSON)");
    mct->add_option("--config", config, "TOML file")->required();
    mct->add_option("--out", out, "CSV trajectory path, used when the config sets h and steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (poly->parsed()) {
            cmd_poly(family, n, k, format);
        } else if (trees->parsed()) {
            if (family != "fsolution") parse_tree_family(family);
            cmd_trees(family, n, tformat);
        } else if (sw->parsed()) {
            auto pr = family_problem(word_family(qb), ALPHA_B, word_family(qa), ALPHA_A, m, wcase, order);
            print_ladder(solve_words(pr), "f", format);
        } else if (fk->parsed()) {
            auto f = laurent_fk(order, skew, rule == "shifted" ? SkewRule::Shifted : SkewRule::Taylor);
            if (format == "json") {
                json j = json::array();
                for (const auto& p : f) j.push_back(cpoly_json(p));
                std::cout << j.dump() << "\n";
            } else {
                for (std::size_t i = 0; i < f.size(); ++i) std::cout << "f" << i << " = " << render(f[i]) << "\n";
            }
        } else if (opf->parsed()) {
            print_ladder(prime ? corollary_F_prime(order) : operator_F(order), prime ? "F'" : "F", format);
        } else if (td->parsed()) {
            auto fg = time_dependent_FG(order);
            if (format == "json") {
                std::cout << json{{"F", ladder_json(fg.F)}, {"G", ladder_json(fg.G)}}.dump() << "\n";
            } else {
                print_ladder(fg.F, "F", "text");
                print_ladder(fg.G, "G", "text");
            }
        } else if (knm->parsed()) {
            std::cout << knm_scalar(n, m) << "\n";
        } else if (ver->parsed()) {
            json j = cmd_verify(check, dim, rank, seed, order);
            std::cout << j.dump(2) << "\n";
            if (!j["pass"].get<bool>()) throw Failed("check '" + check + "' exceeded its tolerance");
        } else if (sim->parsed()) {
            std::string text;
            if (model == "scalar") {
                text = sim_scalar(load_config(config, kScalarKeys));
            } else if (model == "mct") {
                text = sim_mct(load_config(config, kMctKeys));
            } else {
                text = sim_system(load_config(config, kSystemKeys), model == "given-kernel");
            }
            emit(text, out);
        } else if (hub->parsed()) {
            emit(hubbard_run(hmode, load_config(config, kHubbardKeys)), out);
        } else if (gle->parsed()) {
            emit(gle_run(load_config(config, {"m", "gamma", "beta", "potential", "V2", "V3", "V1V2"})), out);
        } else if (mct->parsed()) {
            Config cfg = load_config(config, kMctKeys);
            std::cout << mct_run(cfg);
            // with a step size the trajectory goes to --out
            if (cfg.has("h") || cfg.has("steps")) {
                if (out.empty()) throw ConfigError("a trajectory needs --out");
                emit(sim_mct(cfg), out);
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
