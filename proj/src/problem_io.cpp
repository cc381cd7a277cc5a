#include "nlpi/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace nlpi {

namespace {

using nlohmann::json;

const cplx kImag(0.0, 1.0);

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) fail(std::string("unknown key \"") + it.key() + "\" in " + where);
    }
}

cplx parse_complex(const json& j, const char* what) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_object() && j.size() == 2 && j.contains("re") && j.contains("im") &&
        j["re"].is_number() && j["im"].is_number())
        return cplx(j["re"].get<double>(), j["im"].get<double>());
    fail(std::string(what) + ": complex values are numbers or {re, im} records");
}

GridFunction builtin_function(const std::string& name, int n) {
    if (name == "zero") return GridFunction::constant(n, 0.0);
    if (name == "one") return GridFunction::constant(n, 1.0);
    if (name == "i") return GridFunction::constant(n, kImag);
    if (name == "constant-0.3") return GridFunction::constant(n, 0.3);
    if (name == "fig1")
        return GridFunction::sample(n, [](double x) {
            return 0.5 * cplx(1.0, -1.0) * (x - kPi);
        });
    fail("unknown builtin function \"" + name + "\"");
}

GridFunction parse_function(const json& j, int n, const char* what) {
    if (!j.is_object()) fail(std::string(what) + ": expected an object");
    int encodings = 0;
    for (const char* e : {"builtin", "polynomial", "fourier", "samples"})
        encodings += j.contains(e) ? 1 : 0;
    if (encodings != 1)
        fail(std::string(what) + ": exactly one encoding of "
             "builtin/polynomial/fourier/samples is required");

    if (j.contains("builtin")) {
        if (!j["builtin"].is_string()) fail(std::string(what) + ": builtin must be a name");
        return builtin_function(j["builtin"].get<std::string>(), n);
    }
    if (j.contains("polynomial")) {
        // coefficients of (x - pi)^p, ascending degree
        const json& arr = j["polynomial"];
        if (!arr.is_array()) fail(std::string(what) + ": polynomial must be an array");
        std::vector<cplx> c;
        for (const json& e : arr) c.push_back(parse_complex(e, what));
        return GridFunction::sample(n, [&c](double x) {
            cplx v = 0.0;
            for (size_t p = c.size(); p-- > 0;) v = v * (x - kPi) + c[p];
            return v;
        });
    }
    if (j.contains("fourier")) {
        // modes {m, re, im}: f(x) = sum c_m e^{imx}
        const json& arr = j["fourier"];
        if (!arr.is_array()) fail(std::string(what) + ": fourier must be an array");
        std::vector<std::pair<int, cplx>> modes;
        for (const json& e : arr) {
            if (!e.is_object() || !e.contains("m") || !e["m"].is_number_integer())
                fail(std::string(what) + ": fourier entries are {m, re, im} records");
            json coeff = e;
            coeff.erase("m");
            modes.emplace_back(e["m"].get<int>(), parse_complex(coeff, what));
        }
        return GridFunction::sample(n, [&modes](double x) {
            cplx v = 0.0;
            for (const auto& [m, c] : modes) v += c * std::exp(kImag * double(m) * x);
            return v;
        });
    }
    const json& arr = j["samples"];
    if (!arr.is_array() || int(arr.size()) != n + 1)
        fail(std::string(what) + ": samples must list grid_n + 1 values");
    GridFunction f(n);
    for (int i = 0; i <= n; ++i) f.v[i] = parse_complex(arr[i], what);
    return f;
}

Controls parse_controls(const json& j, double& b) {
    Controls c;
    if (j.is_null()) return c;
    if (!j.is_object()) fail("controls: expected an object");
    check_keys(j, {"grid_n", "trunc", "fine_n", "zero_tol", "contour_theta",
                   "window", "b"},
               "controls");
    auto get_int = [&](const char* key, int& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_number_integer() || j[key].get<int>() <= 0)
            fail(std::string("controls.") + key + " must be a positive integer");
        out = j[key].get<int>();
    };
    auto get_pos = [&](const char* key, double& out) {
        if (!j.contains(key)) return;
        if (!j[key].is_number() || !(j[key].get<double>() > 0.0))
            fail(std::string("controls.") + key + " must be positive");
        out = j[key].get<double>();
    };
    get_int("grid_n", c.grid_n);
    get_int("trunc", c.trunc);
    get_int("fine_n", c.fine_n);
    get_int("window", c.window);
    get_pos("zero_tol", c.zero_tol);
    get_pos("contour_theta", c.contour_theta);
    get_pos("b", b);
    return c;
}

json complex_record(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

} // namespace

ProblemFile parse_problem(const std::string& json_text, const std::string& name) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(name + ": " + e.what());
    }
    if (!j.is_object()) fail(name + ": expected a JSON object");
    check_keys(j, {"version", "potential", "rho", "interaction", "controls"},
               "problem file");
    if (!j.contains("version") || !j["version"].is_number_integer() ||
        j["version"].get<int>() != 1)
        fail(name + ": unsupported or missing version (expected 1)");
    for (const char* key : {"potential", "rho", "interaction"})
        if (!j.contains(key)) fail(name + ": missing field \"" + key + "\"");

    double b = 1.4;
    const Controls ctrl = parse_controls(j.value("controls", json()), b);
    const int n = ctrl.grid_n;

    GridFunction V = parse_function(j["potential"], n, "potential");
    const cplx rho = parse_complex(j["rho"], "rho");

    const json& ij = j["interaction"];
    if (!ij.is_object()) fail("interaction: expected an object");
    check_keys(ij, {"kind", "builtin", "polynomial", "fourier", "samples"},
               "interaction");
    std::string kind = ij.value("kind", "k");
    if (kind != "k" && kind != "K")
        fail("interaction.kind must be \"k\" or \"K\"");
    json fn = ij;
    fn.erase("kind");
    GridFunction k = parse_function(fn, n, "interaction");

    if (kind == "K") {
        double vmax = 0.0;
        for (const cplx& z : V.v) vmax = std::max(vmax, std::abs(z));
        if (vmax > 1e-14 || std::abs(rho - 1.0) > 1e-14)
            fail("interaction kind \"K\" describes P_{1,K}: "
                 "potential must vanish and rho must equal 1");
    }
    return ProblemFile{1, name, kind == "K", b,
                       ProblemSpec(std::move(V), rho, std::move(k), ctrl)};
}

ProblemFile builtin_problem(const std::string& name) {
    const Controls c;
    const int n = c.grid_n;
    const GridFunction zero = GridFunction::constant(n, 0.0);
    if (name == "free")
        return ProblemFile{1, name, true, 1.4, ProblemSpec(zero, 1.0, zero, c)};
    if (name == "fig1" || name == "constant-0.3")
        return ProblemFile{1, name, true, 1.4,
                           ProblemSpec(zero, 1.0, builtin_function(name, n), c)};
    fail("unknown builtin problem \"" + name + "\"");
}

ProblemFile load_problem(const std::string& input) {
    std::ifstream in(input);
    if (!in) {
        for (const char* b : {"free", "fig1", "constant-0.3"})
            if (input == b) return builtin_problem(input);
        fail("cannot open problem file \"" + input + "\"");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_problem(text.str(), input);
}

std::string serialize_problem(const ProblemSpec& spec, bool interaction_is_K,
                              double b) {
    json j;
    j["version"] = 1;
    json vs = json::array(), ks = json::array();
    for (const cplx& z : spec.V.v) vs.push_back(complex_record(z));
    for (const cplx& z : spec.k.v) ks.push_back(complex_record(z));
    j["potential"] = json{{"samples", std::move(vs)}};
    j["rho"] = complex_record(spec.rho);
    j["interaction"] =
        json{{"kind", interaction_is_K ? "K" : "k"}, {"samples", std::move(ks)}};
    j["controls"] = json{{"grid_n", spec.V.n},
                         {"trunc", spec.ctrl.trunc},
                         {"fine_n", spec.ctrl.fine_n},
                         {"zero_tol", spec.ctrl.zero_tol},
                         {"contour_theta", spec.ctrl.contour_theta},
                         {"window", spec.ctrl.window},
                         {"b", b}};
    return j.dump(1) + "\n";
}

} // namespace nlpi
