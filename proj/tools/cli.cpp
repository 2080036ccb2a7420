#include "cli.hpp"

#include <CLI11.hpp>
#include <random>
#include <sstream>

#include "ramf/eisenstein.hpp"
#include "ramf/json_io.hpp"
#include "ramf/lseries.hpp"
#include "ramf/parallel.hpp"
#include "ramf/verifier.hpp"

namespace ramf::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

double parse_real(const std::string& t) {
    std::string s = trim(t);
    if (s.empty()) throw InvalidArgument("empty number");
    auto slash = s.find('/');
    try {
        std::size_t used = 0;
        if (slash != std::string::npos) {
            double p = std::stod(s.substr(0, slash)), q = std::stod(s.substr(slash + 1));
            return p / q;
        }
        double v = std::stod(s, &used);
        if (used != s.size()) throw InvalidArgument("bad number '" + t + "'");
        return v;
    } catch (const std::logic_error&) {
        throw InvalidArgument("bad number '" + t + "'");
    }
}

// Accepts "x,y", "a+bi", "bi", "i", "1/3+2i".
cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ') s += c;
    if (s.find(',') != std::string::npos) {
        auto p = split(s, ',');
        if (p.size() != 2) throw InvalidArgument("bad complex '" + text + "'");
        return {parse_real(p[0]), parse_real(p[1])};
    }
    cplx z = 0.0;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && !((s[j] == '+' || s[j] == '-') && s[j - 1] != 'e' && s[j - 1] != 'E')) ++j;
        std::string term = s.substr(i, j - i);
        if (!term.empty() && term.back() == 'i') {
            std::string m = term.substr(0, term.size() - 1);
            double v = m.empty() || m == "+" ? 1.0 : m == "-" ? -1.0 : parse_real(m);
            z += cplx(0, v);
        } else {
            z += parse_real(term);
        }
        i = j;
    }
    return z;
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    for (auto& p : split(s, ','))
        if (!trim(p).empty()) out.push_back(parse_real(p));
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (auto& p : split(s, ','))
        if (!trim(p).empty()) out.push_back(static_cast<int>(std::lround(parse_real(p))));
    return out;
}

Weights parse_weights(const std::string& s) {
    auto v = parse_ints(s);
    if (v.size() != 2) throw InvalidArgument("weights must be r,s");
    return {v[0], v[1]};
}

struct Common {
    int threads = 0;
    std::string config;
    std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--threads", c.threads, "Worker threads (default: RAMF_THREADS or hardware)");
    sub->add_option("--config", c.config, "JSON file of flag values; explicit flags take precedence");
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

struct EisOpts {
    i64 level = 1;
    std::string weights = "1,1";
    std::string kind = "real-analytic";
    int chi = 0;
    std::string cusp = "inf";
    i64 bound = 400;
    bool no_tail = false;
};

void add_eis(CLI::App* sub, EisOpts& o) {
    sub->add_option("--level", o.level, "Level N");
    sub->add_option("--weights", o.weights, "Weights r,s (r alone is used for the holomorphic and non-holomorphic kinds)");
    sub->add_option("--kind", o.kind, "real-analytic | holomorphic | nonholomorphic");
    sub->add_option("--chi", o.chi, "Character index mod N");
    sub->add_option("--cusp", o.cusp, "Cusp: inf or a/c");
    sub->add_option("--bound", o.bound, "Truncation box size for the coset sum");
    sub->add_flag("--no-tail-correction", o.no_tail, "Disable the continuum estimate of the omitted terms");
}

EisensteinSpec make_spec(const EisOpts& o) {
    EisensteinSpec s;
    s.N = o.level;
    s.chi = character(o.level, o.chi);
    s.cusp = Cusp::parse(o.cusp);
    s.kind = parse_kind(o.kind);
    Weights w = parse_weights(o.weights.find(',') == std::string::npos ? o.weights + ",0" : o.weights);
    s.r = w.r;
    s.s = w.s;
    s.bound = o.bound;
    s.tail_correction = !o.no_tail;
    return s;
}

std::vector<double> json_weights(const Json& j) {
    std::vector<double> out;
    if (j.contains("weights"))
        for (auto& v : j["weights"]) out.push_back(v.get<double>());
    return out;
}

Weights weights_or_file(const std::string& flag, const Json& file) {
    if (!flag.empty()) return parse_weights(flag);
    auto v = json_weights(file);
    if (v.size() == 2) return {static_cast<int>(v[0]), static_cast<int>(v[1])};
    throw InvalidArgument("weights not given (--weights r,s) and not recorded in the form file");
}

// Converts a config JSON object into flag tokens placed before the user's flags.
std::vector<std::string> config_tokens(const std::string& path) {
    Json j = read_json_file(path);
    if (!j.is_object()) throw InvalidArgument("config file must hold a JSON object");
    std::vector<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string flag = "--" + it.key();
        const Json& v = it.value();
        if (v.is_boolean()) {
            if (v.get<bool>()) out.push_back(flag);
        } else if (v.is_array()) {
            std::string joined;
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) joined += ",";
                joined += v[i].is_string() ? v[i].get<std::string>() : dump17(v[i], -1);
            }
            out.push_back(flag);
            out.push_back(joined);
        } else {
            out.push_back(flag);
            out.push_back(v.is_string() ? v.get<std::string>() : dump17(v, -1));
        }
    }
    return out;
}

std::vector<std::string> merge_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || args.empty()) return args;
    std::vector<std::string> out{args[0]};
    for (auto& t : config_tokens(path)) out.push_back(t);
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
}

Json form_file(const std::string& path) { return read_json_file(path); }

void emit(std::ostream& out, const Json& j) { out << dump17(j) << "\n"; }

}  // namespace

int run(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
    CLI::App app{"Real-analytic modular forms on Gamma0(N): evaluation, L-series and converse checks", "ramf"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1, 1);
    Common common;

    // characters
    auto* c_chars = app.add_subcommand("characters", "Dirichlet characters mod D with value tables and Gauss sums");
    i64 modulus = 1;
    c_chars->add_option("--modulus", modulus, "Modulus D")->required();
    add_common(c_chars, common);

    // eisenstein
    auto* c_eis = app.add_subcommand(
        "eisenstein",
        "Truncated Eisenstein series at a singular cusp (holomorphic, non-holomorphic or real-analytic), its "
        "derivative identities, Laplacian eigenvalue residual and the level-one expansion");
    EisOpts eis;
    std::vector<std::string> eis_z;
    bool eis_ident = false, eis_expansion = false;
    int eis_random = 0, eis_nmax = 64;
    unsigned long long seed = 1;
    std::string eis_grid;
    double eis_h = 1e-5;
    add_eis(c_eis, eis);
    c_eis->add_option("--z", eis_z, "Evaluation point, e.g. i, 0.5+2i or x,y")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    c_eis->add_flag("--identities", eis_ident, "Also report the derivative identity and Laplacian residuals");
    c_eis->add_option("--fd-step", eis_h, "Finite-difference step for the derivative identities");
    c_eis->add_option("--random-gammas", eis_random, "Report the transformation-law residual for this many random matrices");
    c_eis->add_option("--seed", seed, "Seed for random matrices");
    c_eis->add_option("--grid", eis_grid, "x0,x1,nx,y0,y1,ny: CSV table of values");
    c_eis->add_flag("--expansion", eis_expansion, "Emit the level-one expansion for weights (r,r)");
    c_eis->add_option("--nmax", eis_nmax, "Truncation of the emitted expansion");
    add_common(c_eis, common);

    // eval
    auto* c_eval = app.add_subcommand("eval", "Evaluate a stored expansion with its growth-based tail estimate");
    std::string form;
    std::vector<std::string> eval_z;
    int eval_nmax = -1;
    c_eval->add_option("--form", form, "Expansion JSON")->required();
    c_eval->add_option("--z", eval_z, "Evaluation point")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)->required();
    c_eval->add_option("--nmax", eval_nmax, "Sub-truncation");
    add_common(c_eval, common);

    // operators
    auto* c_ops = app.add_subcommand(
        "operators", "Raising and lowering operators, the weight (r,s) Laplacian, conjugation, the eigenfunction "
                     "decomposition and the vanishing certificate, applied exactly to an expansion");
    std::string op, ops_weights = "0,0";
    c_ops->add_option("--form", form, "Expansion JSON")->required();
    c_ops->add_option("--op", op, "raise | lower | laplacian | conjugate | eigen-split | vanishing")
        ->required()
        ->check(CLI::IsMember({"raise", "lower", "laplacian", "conjugate", "eigen-split", "vanishing"}));
    c_ops->add_option("--weights", ops_weights, "Weights r,s");
    add_common(c_ops, common);

    // twist
    auto* c_twist = app.add_subcommand("twist", "Twist of an expansion by a Dirichlet character mod D (Gauss-sum coefficients)");
    i64 D = 1;
    int chi_idx = 0;
    c_twist->add_option("--form", form, "Expansion JSON with M = 1")->required();
    c_twist->add_option("--D", D, "Modulus D");
    c_twist->add_option("--chi", chi_idx, "Character index mod D");
    add_common(c_twist, common);

    // lseries
    auto* c_ls = app.add_subcommand("lseries", "L-series of an expansion against a test function, by coefficient sum and by integral");
    std::string phi_path;
    double u = 0;
    bool integral = false, series = false, both = false;
    c_ls->add_option("--form", form, "Expansion JSON")->required();
    c_ls->add_option("--phi", phi_path, "Test function JSON")->required();
    auto* u_opt = c_ls->add_option("--u", u, "Auxiliary variable");
    c_ls->add_flag("--integral", integral, "Integral path only");
    c_ls->add_flag("--series", series, "Series path only");
    c_ls->add_flag("--both", both, "Both paths (default)");
    add_common(c_ls, common);

    // check-fe
    auto* c_fe = app.add_subcommand(
        "check-fe", "Residual of the twisted functional equation relating F and G under the Fricke involution "
                    "(with --u: the auxiliary-variable version)");
    std::string F_path, G_path, fe_weights;
    i64 level = 1;
    int psi_idx = 0;
    double tol = 1e-6;
    c_fe->add_option("--F", F_path, "Expansion JSON for F")->required();
    c_fe->add_option("--G", G_path, "Expansion JSON for G")->required();
    c_fe->add_option("--level", level, "Level N");
    c_fe->add_option("--D", D, "Twist modulus D, coprime to N");
    c_fe->add_option("--chi", chi_idx, "Character index mod D");
    c_fe->add_option("--psi", psi_idx, "Nebentypus index mod N");
    c_fe->add_option("--phi", phi_path, "Test function JSON")->required();
    auto* fe_u = c_fe->add_option("--u", u, "Auxiliary variable");
    c_fe->add_option("--weights", fe_weights, "Weights r,s (default: recorded in F)");
    c_fe->add_option("--tol", tol, "Exit 0 iff residual < tol");
    add_common(c_fe, common);

    // check-converse
    auto* c_cv = app.add_subcommand(
        "check-converse", "Converse-theorem pipeline: functional equations over all admissible twists and a test-function "
                          "family, then Fricke and transformation-law corroboration");
    std::string F1_path, F2_path, cv_weights, u_grid, report;
    ConverseConfig cfg;
    double fam_lo = 0.125, fam_hi = 8;
    int fam_count = 8;
    c_cv->add_option("--F1", F1_path, "Expansion JSON for F1")->required();
    c_cv->add_option("--F2", F2_path, "Expansion JSON for F2")->required();
    c_cv->add_option("--level", level, "Level N");
    c_cv->add_option("--psi", psi_idx, "Nebentypus index mod N");
    c_cv->add_option("--weights", cv_weights, "Weights r,s (default: recorded in F1)");
    c_cv->add_option("--u-grid", u_grid, "Comma-separated u values: use the auxiliary-variable equation");
    c_cv->add_option("--max-D", cfg.max_D, "Cap on the twist modulus");
    c_cv->add_option("--tol-A", cfg.tol_A, "Tolerance for the functional equations");
    c_cv->add_option("--tol-B", cfg.tol_B, "Tolerance for the Fricke and transformation-law residuals");
    c_cv->add_option("--tol-modes", cfg.tol_modes, "Relative tolerance for the Fourier-mode comparison");
    c_cv->add_option("--sign-b", cfg.sign_b, "Sign in front of the raised and lowered equations");
    c_cv->add_option("--family-lo", fam_lo, "Lower end of the covered interval");
    c_cv->add_option("--family-hi", fam_hi, "Upper end of the covered interval");
    c_cv->add_option("--family-count", fam_count, "Number of bump test functions");
    c_cv->add_option("--report", report, "Also write the verdict JSON here");
    add_common(c_cv, common);

    // extract
    auto* c_ex = app.add_subcommand("extract", "Numerical expansion of an evaluator by Fourier sampling and a Vandermonde fit in y");
    EisOpts ex_eis;
    int ex_M = 1, ex_n0 = 0, ex_nmax = 8;
    std::string ex_S = "-2,-1,1", ex_y = "0.1,0.13,0.17,0.22";
    c_ex->add_option("--form", form, "Expansion JSON to sample (default: an Eisenstein series)");
    add_eis(c_ex, ex_eis);
    c_ex->add_option("--M", ex_M, "Period M");
    c_ex->add_option("--S", ex_S, "Comma-separated y-exponents");
    c_ex->add_option("--n0", ex_n0, "Lowest frequency");
    c_ex->add_option("--nmax", ex_nmax, "Highest frequency");
    c_ex->add_option("--y", ex_y, "Comma-separated heights");
    add_common(c_ex, common);

    // growth-scan
    auto* c_gs = app.add_subcommand("growth-scan", "Fitted exponential growth rate of F at each cusp direction");
    EisOpts gs_eis;
    std::string gs_y = "3,4,5,6,8", gs_gammas, gs_weights;
    int gs_nx = 32;
    c_gs->add_option("--form", form, "Expansion JSON (default: an Eisenstein series)");
    add_eis(c_gs, gs_eis);
    c_gs->add_option("--y-grid", gs_y, "Increasing heights");
    c_gs->add_option("--gammas", gs_gammas, "Matrices a,b,c,d separated by ';' (default: scaling matrices of the cusps)");
    c_gs->add_option("--slash-weights", gs_weights, "Weights for the slash action with --form");
    c_gs->add_option("--nx", gs_nx, "x samples per height");
    add_common(c_gs, common);

    std::vector<std::string> args;
    try {
        args = merge_config(raw);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    if (common.threads > 0) set_thread_count(common.threads);
    try {
        if (*c_chars) {
            Json list = Json::array();
            for (auto& chi : character_group(modulus)) {
                Json j = to_json(chi, true);
                j["gauss_sum_1"] = complex_json(gauss_sum(chi, 1));
                list.push_back(j);
            }
            emit(out, {{"modulus", modulus}, {"count", list.size()}, {"characters", list}});
            return 0;
        }
        if (*c_eis) {
            if (eis_expansion) {
                Weights w = parse_weights(eis.weights);
                if (eis.level != 1 || w.r != w.s) throw InvalidArgument("--expansion needs level 1 and weights r,r");
                Json j = to_json(level1_expansion(w.r, eis_nmax));
                j["weights"] = Json::array({w.r, w.s});
                emit(out, j);
                return 0;
            }
            EisensteinSpec spec = make_spec(eis);
            EisensteinSeries E(spec);
            if (!eis_grid.empty()) {
                auto g = parse_reals(eis_grid);
                if (g.size() != 6) throw InvalidArgument("--grid needs x0,x1,nx,y0,y1,ny");
                int nx = static_cast<int>(g[2]), ny = static_cast<int>(g[5]);
                out << "x,y,re,im\n";
                char buf[160];
                for (int iy = 0; iy < ny; ++iy)
                    for (int ix = 0; ix < nx; ++ix) {
                        double x = nx > 1 ? g[0] + (g[1] - g[0]) * ix / (nx - 1) : g[0];
                        double y = ny > 1 ? g[3] + (g[4] - g[3]) * iy / (ny - 1) : g[3];
                        cplx v = E(cplx(x, y));
                        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x, y, v.real(), v.imag());
                        out << buf;
                    }
                return 0;
            }
            if (eis_z.empty()) eis_z.push_back("i");
            Json pts = Json::array();
            for (auto& zs : eis_z) {
                cplx z = parse_complex(zs);
                EvalResult r = E.value(z);
                Json p{{"z", complex_json(z)}, {"value", complex_json(r.value)}, {"tail", r.tail}};
                if (eis_ident) {
                    if (spec.kind == EisKind::RealAnalytic) {
                        Json id = Json::object();
                        for (int which = 1; which <= 4; ++which) {
                            if (which == 2 && spec.s < 1) continue;
                            if (which == 4 && spec.r < 1) continue;
                            id["identity_" + std::to_string(which)] = differential_identity_residual(spec, z, which, eis_h);
                        }
                        p["derivative_identities"] = id;
                    }
                    p["laplacian_residual"] = laplacian_eigen_residual(spec, z);
                }
                pts.push_back(p);
            }
            Json j{{"spec", to_json(spec)}, {"terms", E.term_count()}};
            if (pts.size() == 1) {
                j["value"] = pts[0]["value"];
                j["tail"] = pts[0]["tail"];
            }
            j["points"] = pts;
            if (eis_random > 0) {
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<int> U(-10, 10);
                Json mats = Json::array();
                double worst = 0;
                Weights w{spec.r, spec.kind == EisKind::RealAnalytic ? spec.s : 0};
                if (spec.kind == EisKind::NonHolomorphic) w = {0, 0};
                while (static_cast<int>(mats.size()) < eis_random) {
                    IntegerMatrix g{U(rng), U(rng), U(rng), U(rng)};
                    if (!g.in_gamma0(spec.N)) continue;
                    double r = modularity_residual(E, w, g, spec.chi, {cplx(0, 1)});
                    worst = std::max(worst, r);
                    mats.push_back({{"gamma", to_json(g)}, {"residual", r}});
                }
                j["transformation_law"] = {{"seed", seed}, {"max_residual", worst}, {"samples", mats}};
            }
            emit(out, j);
            return 0;
        }
        if (*c_eval) {
            Json f = form_file(form);
            Json pts = Json::array();
            for (auto& zs : eval_z) {
                cplx z = parse_complex(zs);
                EvalResult r = looks_like_bi(f) ? evaluate(biexpansion_from_json(f), z, eval_nmax)
                                                : evaluate(qexpansion_from_json(f), z, eval_nmax);
                pts.push_back({{"z", complex_json(z)}, {"value", complex_json(r.value)}, {"tail", r.tail}});
            }
            emit(out, {{"points", pts}});
            return 0;
        }
        if (*c_ops) {
            Json f = form_file(form);
            Weights w = parse_weights(ops_weights);
            if (looks_like_bi(f)) {
                BiExpansion e = biexpansion_from_json(f);
                if (op == "raise") emit(out, to_json(raise(e, w.r)));
                else if (op == "lower") emit(out, to_json(lower(e, w.s)));
                else if (op == "laplacian") emit(out, to_json(laplacian(e, w)));
                else if (op == "conjugate") emit(out, to_json(conjugate(e)));
                else throw InvalidArgument("--op " + op + " needs a single-index expansion");
                return 0;
            }
            QExpansion e = qexpansion_from_json(f);
            if (op == "raise") emit(out, to_json(raise(e, w.r)));
            else if (op == "lower") emit(out, to_json(lower(e, w.s)));
            else if (op == "laplacian") emit(out, to_json(laplacian(e, w)));
            else if (op == "conjugate") emit(out, to_json(conjugate(e)));
            else if (op == "vanishing") emit(out, to_json(vanishing_certificate(e)));
            else {
                EigenData d = eigen_split(e, w);
                emit(out, {{"k0", d.k0}, {"k0p", d.k0p}, {"lambda", d.lambda}, {"Fh", to_json(d.Fh)}, {"Fa", to_json(d.Fa)}, {"F0", to_json(d.F0)}});
            }
            return 0;
        }
        if (*c_twist) {
            Json f = form_file(form);
            DirichletCharacter chi = character(D, chi_idx);
            if (looks_like_bi(f)) emit(out, to_json(twist(biexpansion_from_json(f), chi)));
            else emit(out, to_json(twist(qexpansion_from_json(f), chi)));
            return 0;
        }
        if (*c_ls) {
            Json f = form_file(form);
            TestFunction phi = test_function_from_json(read_json_file(phi_path));
            bool do_int = integral || both || !series, do_ser = series || both || !integral;
            Json j = Json::object();
            if (u_opt->count() > 0 || looks_like_bi(f)) {
                BiExpansion e = looks_like_bi(f) ? biexpansion_from_json(f) : to_bi(qexpansion_from_json(f));
                j["u"] = u;
                if (do_ser) j["series"] = to_json(lseries_u(e, phi, u));
                if (do_int) j["integral"] = to_json(lseries_u_integral(evaluator(e), phi, u));
            } else {
                QExpansion e = qexpansion_from_json(f);
                if (do_ser) j["series"] = to_json(lseries_series(e, phi));
                if (do_int) j["integral"] = to_json(lseries_integral(e, phi));
            }
            emit(out, j);
            return 0;
        }
        if (*c_fe) {
            Json fj = form_file(F_path), gj = form_file(G_path);
            Weights w = weights_or_file(fe_weights, fj);
            DirichletCharacter chi = character(D, chi_idx), psi = character(level, psi_idx);
            TestFunction phi = test_function_from_json(read_json_file(phi_path));
            FEResult r;
            Json j;
            if (fe_u->count() > 0 || looks_like_bi(fj) || looks_like_bi(gj)) {
                auto bi = [](const Json& x) { return looks_like_bi(x) ? biexpansion_from_json(x) : to_bi(qexpansion_from_json(x)); };
                r = functional_equation_u(bi(fj), bi(gj), w, level, D, chi, psi, phi, u);
                j["u"] = u;
            } else {
                r = functional_equation(qexpansion_from_json(fj), qexpansion_from_json(gj), w, level, D, chi, psi, phi);
            }
            bool pass = r.residual < tol;
            j["verdict"] = pass ? "PASS" : "FAIL";
            j["residual"] = r.residual;
            j["tol"] = tol;
            j["lhs"] = complex_json(r.lhs);
            j["rhs"] = complex_json(r.rhs);
            if (!std::isnan(r.lhs_series.real())) {
                j["lhs_series"] = complex_json(r.lhs_series);
                j["rhs_series"] = complex_json(r.rhs_series);
            }
            j["level"] = level;
            j["D"] = D;
            j["chi"] = to_json(chi);
            j["psi"] = to_json(psi);
            j["weights"] = Json::array({w.r, w.s});
            emit(out, j);
            return pass ? 0 : 2;
        }
        if (*c_cv) {
            Json f1 = form_file(F1_path), f2 = form_file(F2_path);
            Weights w = weights_or_file(cv_weights, f1);
            DirichletCharacter psi = character(level, psi_idx);
            cfg.cover_lo = fam_lo;
            cfg.cover_hi = fam_hi;
            auto family = bump_family(fam_lo, fam_hi, fam_count);
            Verdict v;
            if (!u_grid.empty()) {
                auto bi = [](const Json& x) { return looks_like_bi(x) ? biexpansion_from_json(x) : to_bi(qexpansion_from_json(x)); };
                v = converse_check_u(bi(f1), bi(f2), w, level, psi, family, parse_reals(u_grid), cfg);
            } else {
                v = converse_check(qexpansion_from_json(f1), qexpansion_from_json(f2), w, level, psi, family, cfg);
            }
            Json j = to_json(v);
            if (!report.empty()) write_text_file(report, dump17(j) + "\n");
            emit(out, j);
            return v.passed ? 0 : 2;
        }
        if (*c_ex) {
            Evaluator F;
            if (!form.empty()) {
                Json f = form_file(form);
                F = looks_like_bi(f) ? evaluator(biexpansion_from_json(f)) : evaluator(qexpansion_from_json(f));
            } else {
                F = EisensteinSeries(make_spec(ex_eis));
            }
            auto Sv = parse_ints(ex_S);
            Extraction x = extract_expansion(F, ex_M, std::set<int>(Sv.begin(), Sv.end()), ex_n0, ex_nmax, parse_reals(ex_y));
            Json res = Json::object();
            for (auto& [nu, r] : x.residuals) res[std::to_string(nu)] = r;
            emit(out, {{"expansion", to_json(x.expansion)}, {"max_residual", x.max_residual}, {"residuals", res}});
            return 0;
        }
        if (*c_gs) {
            Evaluator F;
            Weights w{0, 0};
            i64 N = gs_eis.level;
            if (!form.empty()) {
                Json f = form_file(form);
                F = looks_like_bi(f) ? evaluator(biexpansion_from_json(f)) : evaluator(qexpansion_from_json(f));
                if (!gs_weights.empty()) w = parse_weights(gs_weights);
                else if (json_weights(f).size() == 2) w = weights_or_file("", f);
            } else {
                EisensteinSpec spec = make_spec(gs_eis);
                F = EisensteinSeries(spec);
                w = {spec.r, spec.kind == EisKind::RealAnalytic ? spec.s : 0};
                if (spec.kind == EisKind::NonHolomorphic) w = {0, 0};
            }
            std::vector<IntegerMatrix> gammas;
            if (!gs_gammas.empty()) {
                for (auto& m : split(gs_gammas, ';')) {
                    auto v = parse_ints(m);
                    if (v.size() != 4) throw InvalidArgument("--gammas entries must be a,b,c,d");
                    gammas.push_back({v[0], v[1], v[2], v[3]});
                }
            } else {
                for (auto& cusp : cusps_of_gamma0(N)) gammas.push_back(scaling_matrix(cusp, N));
            }
            emit(out, to_json(cusp_growth_scan(F, w, gammas, parse_reals(gs_y), gs_nx)));
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace ramf::cli
