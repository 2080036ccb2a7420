#include "ramf/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ramf {

namespace {

std::string fmt_double(double x) {
    if (std::isnan(x)) return "null";
    if (std::isinf(x)) return x > 0 ? "1e999" : "-1e999";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

void dump_rec(const Json& j, int indent, int depth, std::string& out) {
    auto pad = [&](int d) {
        if (indent >= 0) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                pad(depth + 1);
                out += Json(it.key()).dump();
                out += indent >= 0 ? ": " : ":";
                dump_rec(it.value(), indent, depth + 1, out);
            }
            pad(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            bool flat = true;
            for (auto& v : j)
                if (v.is_structured()) flat = false;
            out += '[';
            bool first = true;
            for (auto& v : j) {
                if (!first) out += flat ? (indent >= 0 ? ", " : ",") : ",";
                first = false;
                if (!flat) pad(depth + 1);
                dump_rec(v, indent, depth + 1, out);
            }
            if (!flat) pad(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: out += fmt_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

}  // namespace

std::string dump17(const Json& j, int indent) {
    std::string out;
    dump_rec(j, indent, 0, out);
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("cannot parse '" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write '" + path + "'");
    out << text;
}

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw InvalidArgument("expected a number or [re, im]");
}

Json to_json(const QExpansion& e) {
    Json j;
    j["M"] = e.M();
    j["n0"] = e.n0();
    j["nmax"] = e.nmax();
    j["S"] = Json::array();
    for (int k : e.S()) j["S"].push_back(k);
    Json terms = Json::array();
    for (auto& [key, c] : e.terms())
        terms.push_back({{"k", key.first}, {"n", key.second}, {"a", complex_json(c.a)}, {"b", complex_json(c.b)}});
    j["terms"] = terms;
    if (e.growth()) j["growth"] = {{"C", e.growth()->C}, {"t", e.growth()->t}, {"kappa", e.growth()->kappa}};
    return j;
}

Json to_json(const BiExpansion& e) {
    Json j;
    j["M"] = e.M();
    j["N0"] = e.N0();
    j["N0p"] = e.N0p();
    j["mmax"] = e.mmax();
    Json terms = Json::array();
    for (auto& [key, a] : e.terms()) {
        auto [jj, m, n] = key;
        terms.push_back({{"j", jj}, {"m", m}, {"n", n}, {"a", complex_json(a)}});
    }
    j["terms"] = terms;
    return j;
}

Json to_json(const TestFunction& phi) {
    Json pieces = Json::array();
    for (auto& p : phi.pieces()) {
        Json coeffs = Json::object();
        for (auto& [pw, c] : p.coeffs) coeffs[std::to_string(pw)] = complex_json(c);
        pieces.push_back({{"lo", p.lo}, {"hi", p.hi}, {"coeffs", coeffs}});
    }
    return {{"pieces", pieces}};
}

Json to_json(const DirichletCharacter& chi, bool with_values) {
    Json j{{"modulus", chi.modulus()}, {"index", chi.index()}};
    if (with_values) {
        j["parity"] = chi.parity();
        j["primitive"] = is_primitive(chi);
        Json vals = Json::array();
        for (auto& v : chi.values()) vals.push_back(complex_json(v));
        j["values"] = vals;
    }
    return j;
}

Json to_json(const IntegerMatrix& m) { return Json::array({m.a, m.b, m.c, m.d}); }
Json to_json(const RealMatrix& m) { return Json::array({m.a, m.b, m.c, m.d}); }

Json to_json(const EisensteinSpec& s) {
    Json j{{"level", s.N}, {"character", to_json(s.chi)}, {"cusp", s.cusp.str()}, {"kind", to_string(s.kind)}};
    j["weights"] = Json::array({s.r, s.kind == EisKind::RealAnalytic ? s.s : 0});
    j["bound"] = s.bound;
    j["tail_correction"] = s.tail_correction;
    return j;
}

namespace {

Json witness_json(const Witness& w) {
    Json j{{"test", w.test}, {"residual", w.residual}, {"D", w.D}, {"chi", w.chi}};
    if (w.phi >= 0) j["phi"] = w.phi;
    if (w.test == "conv1") j["u"] = w.u;
    if (w.y > 0) j["y"] = w.y;
    if (w.detail.rfind("Fourier mode", 0) == 0) j["mode"] = w.mode;
    if (!w.detail.empty()) j["detail"] = w.detail;
    return j;
}

}  // namespace

Json to_json(const Verdict& v) {
    Json j;
    j["verdict"] = v.passed ? "PASS" : "FAIL";
    j["max_residual"] = v.max_residual;
    j["max_residual_B"] = v.max_residual_B;
    j["max_mode_residual"] = v.max_mode_residual;
    j["modes_checked"] = v.modes_checked;
    j["complete"] = v.complete;
    j["D_values"] = v.D_values;
    j["family_size"] = v.family_size;
    j["certified_interval"] = Json::array({v.config.cover_lo, v.config.cover_hi});
    j["config"] = {{"tol_A", v.config.tol_A},       {"tol_B", v.config.tol_B}, {"tol_modes", v.config.tol_modes},
                   {"max_D", v.config.max_D},       {"sign_b", v.config.sign_b},
                   {"phase_b", v.config.phase_b}};
    j["warnings"] = v.warnings;
    Json w = Json::array(), r = Json::array();
    for (auto& x : v.witnesses) w.push_back(witness_json(x));
    for (auto& x : v.residuals) r.push_back(witness_json(x));
    j["witnesses"] = w;
    j["residuals"] = r;
    return j;
}

Json to_json(const VanishingReport& r) {
    return {{"vanishes", r.vanishes},
            {"coefficients_zero", r.coefficients_zero},
            {"n0_ambiguity", r.n0_ambiguity},
            {"nonzero_P", r.nonzero_P},
            {"nonzero_Q", r.nonzero_Q}};
}

Json to_json(const GrowthReport& r) {
    Json rows = Json::array();
    for (auto& row : r.rows) {
        Json lm = Json::array();
        for (double x : row.log_max) lm.push_back(std::isfinite(x) ? Json(x) : Json(nullptr));
        rows.push_back({{"gamma", to_json(row.gamma)},
                        {"A", row.A},
                        {"power", row.power},
                        {"intercept", row.intercept},
                        {"super_exponential", row.super_exponential},
                        {"degenerate", row.degenerate},
                        {"log_max", lm}});
    }
    return {{"y_grid", r.y_grid}, {"rows", rows}, {"flagged", r.any_flagged}};
}

Json to_json(const LValue& l) {
    return {{"value", complex_json(l.value)}, {"abs_tail", l.abs_tail}, {"terms_used", l.terms_used}};
}

QExpansion qexpansion_from_json(const Json& j) {
    try {
        QExpansion e(j.at("M").get<int>(), j.at("n0").get<int>(), j.at("nmax").get<int>());
        if (j.contains("S"))
            for (auto& k : j["S"]) e.add_to_S(k.get<int>());
        for (auto& t : j.at("terms")) {
            cplx a = t.contains("a") ? complex_from_json(t["a"]) : cplx(0.0);
            cplx b = t.contains("b") ? complex_from_json(t["b"]) : cplx(0.0);
            e.add(t.at("k").get<int>(), t.at("n").get<int>(), a, b);
        }
        if (j.contains("growth")) {
            auto& g = j["growth"];
            e.declare_growth({g.at("C").get<double>(), g.value("t", 2.0), g.value("kappa", 1.0)});
        }
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed expansion JSON: ") + ex.what());
    }
}

BiExpansion biexpansion_from_json(const Json& j) {
    try {
        BiExpansion e(j.at("M").get<int>(), j.at("N0").get<int>(), j.at("N0p").get<int>(), j.at("mmax").get<int>());
        for (auto& t : j.at("terms"))
            e.add(t.at("j").get<int>(), t.at("m").get<int>(), t.at("n").get<int>(), complex_from_json(t.at("a")));
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed double expansion JSON: ") + ex.what());
    }
}

TestFunction test_function_from_json(const Json& j) {
    try {
        std::vector<Piece> pieces;
        for (auto& p : j.at("pieces")) {
            Piece pc;
            pc.lo = p.at("lo").get<double>();
            pc.hi = p.at("hi").get<double>();
            for (auto it = p.at("coeffs").begin(); it != p.at("coeffs").end(); ++it)
                pc.coeffs[std::stoi(it.key())] = complex_from_json(it.value());
            pieces.push_back(pc);
        }
        return TestFunction(pieces);
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed test function JSON: ") + ex.what());
    }
}

DirichletCharacter character_from_json(const Json& j) {
    try {
        return character(j.at("modulus").get<i64>(), j.at("index").get<int>());
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidArgument(std::string("malformed character JSON: ") + ex.what());
    }
}

IntegerMatrix integer_matrix_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) throw InvalidArgument("matrix must be [a, b, c, d]");
    return {j[0].get<i64>(), j[1].get<i64>(), j[2].get<i64>(), j[3].get<i64>()};
}

bool looks_like_bi(const Json& j) { return j.contains("mmax") || j.contains("N0p"); }

}  // namespace ramf
