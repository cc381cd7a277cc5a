#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nlpi/problem_io.hpp"
#include "nlpi/semigroup.hpp"

namespace fs = std::filesystem;
using namespace nlpi;

namespace {

constexpr const char* kToolVersion = "0.1.0";

// fixed 12-significant-digit formatting so identical inputs give
// byte-identical reports
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string fmt(cplx z) { return fmt(z.real()) + " " + fmt(z.imag()); }

struct Opts {
    std::string input;
    std::string out = ".";
    std::string format = "text";
    double b = 0.0;    // 0: use the problem file's default
    int window = 0;    // 0: use the problem file's controls
    double lambda = 0.0;
    std::vector<double> times;
};

void add_common(CLI::App* sub, Opts& o) {
    sub->add_option("--input", o.input, "problem file path or builtin name")
        ->required();
    sub->add_option("--out", o.out, "output directory for tabular files");
    sub->add_option("--format", o.format, "report format")
        ->check(CLI::IsMember({"text", "table"}));
    sub->add_option("--b", o.b, "rectangle half-height");
    sub->add_option("--window", o.window, "tail window / expansion size");
}

void write_file(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path().empty() ? "." : p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + p.string());
    out << text;
}

std::string header(const char* command, const ProblemFile& pf, double b,
                   int window) {
    const Controls& c = pf.spec.ctrl;
    std::ostringstream os;
    os << "nlpi " << kToolVersion << "\n"
       << "command: " << command << "\n"
       << "problem: " << pf.name << "\n"
       << "interaction: " << (pf.interaction_is_K ? "K" : "k") << "\n"
       << "controls: grid_n=" << pf.spec.V.n << " trunc=" << c.trunc
       << " fine_n=" << c.fine_n << " window=" << window << " b=" << fmt(b)
       << "\n"
       << "tolerances: zero_tol=" << fmt(c.zero_tol)
       << " contour_theta=" << fmt(c.contour_theta) << "\n";
    return os.str();
}

const char* provenance_name(Provenance p) {
    return p == Provenance::disk_certified ? "disk" : "rectangle";
}

struct Assembled {
    ReducedProblem red;
    Spectrum unshifted;
    Spectrum spectrum;  // shifted by eta
};

Assembled assemble(const ProblemFile& pf, double b, int window) {
    Assembled a{reduce(pf.spec), Spectrum{}, Spectrum{}};
    a.unshifted = assemble_spectrum(a.red, b, window);
    a.spectrum = map_spectrum(a.unshifted, a.red.eta);
    return a;
}

int cmd_spectrum(const ProblemFile& pf, const Opts& o, double b, int window) {
    Assembled a = assemble(pf, b, window);
    std::ostringstream os;
    os << header("spectrum", pf, b, window);
    os << "eta: " << fmt(a.red.eta) << "\n"
       << "truncation_residual: " << fmt(a.red.trunc_residual) << "\n"
       << "tail_threshold: " << a.spectrum.tail_threshold << "\n"
       << "rectangle: " << fmt(a.spectrum.rectangle.re_min) << " "
       << fmt(a.spectrum.rectangle.re_max) << " "
       << fmt(a.spectrum.rectangle.im_min) << " "
       << fmt(a.spectrum.rectangle.im_max) << "\n";
    os << "eigenvalues (re im multiplicity residual provenance):\n";
    for (const LocatedZero& z : a.spectrum.eigenvalues)
        os << "  " << fmt(z.lambda) << " " << z.multiplicity << " "
           << fmt(z.residual) << " " << provenance_name(z.provenance) << "\n";
    os << "disks (n center_re center_im radius):\n";
    for (const auto& [n, r] : a.spectrum.disks)
        os << "  " << n << " " << fmt(double(n) + a.red.eta.real()) << " "
           << fmt(a.red.eta.imag()) << " " << fmt(r) << "\n";
    std::cout << os.str();
    if (o.format == "table") {
        std::ostringstream csv;
        csv << "re,im,multiplicity,residual,provenance\n";
        for (const LocatedZero& z : a.spectrum.eigenvalues)
            csv << fmt(z.lambda.real()) << "," << fmt(z.lambda.imag()) << ","
                << z.multiplicity << "," << fmt(z.residual) << ","
                << provenance_name(z.provenance) << "\n";
        write_file(fs::path(o.out) / "spectrum.csv", csv.str());
    }
    return 0;
}

int cmd_figure(const ProblemFile& pf, const Opts& o, double b, int window) {
    Assembled a = assemble(pf, b, window);

    std::ostringstream ev;
    ev << "re,im,multiplicity\n";
    for (const LocatedZero& z : a.spectrum.eigenvalues)
        ev << fmt(z.lambda.real()) << "," << fmt(z.lambda.imag()) << ","
           << z.multiplicity << "\n";
    write_file(fs::path(o.out) / "eigenvalues.csv", ev.str());

    std::ostringstream ci;
    ci << "center_re,center_im,radius\n";
    for (const auto& [n, r] : a.spectrum.disks) {
        if (r <= 0.0) continue;  // zero-radius circles carry no plot content
        ci << fmt(double(n) + a.red.eta.real()) << "," << fmt(a.red.eta.imag())
           << "," << fmt(r) << "\n";
    }
    write_file(fs::path(o.out) / "circles.csv", ci.str());

    const Rectangle& rc = a.spectrum.rectangle;
    std::ostringstream re;
    re << "corner_re,corner_im\n"
       << fmt(rc.re_min) << "," << fmt(rc.im_min) << "\n"
       << fmt(rc.re_max) << "," << fmt(rc.im_min) << "\n"
       << fmt(rc.re_max) << "," << fmt(rc.im_max) << "\n"
       << fmt(rc.re_min) << "," << fmt(rc.im_max) << "\n";
    write_file(fs::path(o.out) / "rectangle.csv", re.str());

    std::cout << header("figure", pf, b, window) << "eigenvalue_rows: "
              << a.spectrum.eigenvalues.size() << "\ncircle_rows: "
              << [&] {
                     size_t c = 0;
                     for (const auto& [n, r] : a.spectrum.disks) c += r > 0.0;
                     return c;
                 }()
              << "\nfiles: eigenvalues.csv circles.csv rectangle.csv\n";
    return 0;
}

int cmd_resolvent(const ProblemFile& pf, const Opts& o, double b, int window) {
    std::cout << header("resolvent", pf, b, window) << "lambda: "
              << fmt(o.lambda) << "\nhs_norm: "
              << fmt(hs_norm(pf.spec, o.lambda)) << "\n";
    return 0;
}

int cmd_closeness(const ProblemFile& pf, const Opts& o, double b, int window) {
    ReducedProblem red = reduce(pf.spec);
    Spectrum s = assemble_spectrum(red, b, window);
    const std::vector<double> S = quadratic_closeness(red, s, window);
    std::ostringstream os;
    os << header("closeness", pf, b, window) << "partial_sums (J S_J):\n";
    for (size_t j = 0; j < S.size(); ++j)
        os << "  " << (j + 1) << " " << fmt(S[j]) << "\n";
    std::cout << os.str();
    if (o.format == "table") {
        std::ostringstream csv;
        csv << "J,S_J\n";
        for (size_t j = 0; j < S.size(); ++j)
            csv << (j + 1) << "," << fmt(S[j]) << "\n";
        write_file(fs::path(o.out) / "closeness.csv", csv.str());
    }
    return 0;
}

int cmd_dissipative_check(const ProblemFile& pf, const Opts&, double b,
                          int window) {
    const DissipativityReport r = check_dissipative(pf.spec);
    std::ostringstream os;
    os << header("dissipative check", pf, b, window)
       << "admissible: " << (r.admissible ? "yes" : "no") << "\n"
       << "range_ok: " << (r.range_ok ? "yes" : "no") << "\n"
       << "margin: " << fmt(r.margin) << "\n"
       << "bad_points: " << r.bad_points.size() << "\n";
    for (size_t i = 0; i < r.bad_points.size() && i < 10; ++i)
        os << "  x=" << fmt(r.bad_points[i]) << "\n";
    std::cout << os.str();
    return 0;
}

int cmd_dissipative_construct(const ProblemFile& pf, const Opts& o, double b,
                              int window) {
    const RealEigenConstruction con = construct_real_eigen(pf.spec.V, o.lambda);
    const ProblemSpec built(pf.spec.V, con.rho, con.k, pf.spec.ctrl);
    const fs::path path = fs::path(o.out) / "constructed.json";
    write_file(path, serialize_problem(built, false, b));
    std::cout << header("dissipative construct", pf, b, window)
              << "lambda: " << fmt(o.lambda) << "\n"
              << "rho: " << fmt(con.rho) << "\n"
              << "eigen_residual: " << fmt(std::abs(char_residual(built, o.lambda)))
              << "\nfile: " << path.string() << "\n";
    return 0;
}

int cmd_dissipative_evolve(const ProblemFile& pf, const Opts& o, double b,
                           int window) {
    std::vector<double> times = o.times;
    if (times.empty())
        for (int t = 0; t <= 10; ++t) times.push_back(double(t));
    Assembled a = assemble(pf, b, window);
    const std::vector<EigenPair> pairs = eigenpairs_for_spectrum(pf.spec, a.spectrum);
    const int frame_w = std::max(4, std::min(24, window - 8));
    const SemigroupTrace tr =
        norm_decay(pf.spec, a.spectrum, pairs, times, frame_w);
    std::ostringstream os;
    os << header("dissipative evolve", pf, b, window)
       << "regime: "
       << (tr.regime == Regime::converges_to_projection ? "converges-to-projection"
                                                        : "decay-to-zero")
       << "\nzeta: " << fmt(tr.zeta) << "\nfitted_rate: " << fmt(tr.fitted_rate)
       << "\ntrace (t raw_norm norm):\n";
    for (size_t i = 0; i < tr.times.size(); ++i)
        os << "  " << fmt(tr.times[i]) << " " << fmt(tr.raw_norms[i]) << " "
           << fmt(tr.norms[i]) << "\n";
    std::cout << os.str();
    if (o.format == "table") {
        std::ostringstream csv;
        csv << "t,raw_norm,norm\n";
        for (size_t i = 0; i < tr.times.size(); ++i)
            csv << fmt(tr.times[i]) << "," << fmt(tr.raw_norms[i]) << ","
                << fmt(tr.norms[i]) << "\n";
        write_file(fs::path(o.out) / "trace.csv", csv.str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra of first-order operators with non-local point "
                 "interactions on (0, 2pi)"};
    app.require_subcommand(1);
    Opts o;

    CLI::App* spectrum = app.add_subcommand("spectrum", "assemble the spectrum");
    CLI::App* figure = app.add_subcommand("figure", "emit plot data files");
    CLI::App* resolvent =
        app.add_subcommand("resolvent", "Hilbert-Schmidt resolvent norm");
    CLI::App* closeness =
        app.add_subcommand("closeness", "quadratic closeness partial sums");
    CLI::App* diss = app.add_subcommand("dissipative", "dissipativity tools");
    diss->require_subcommand(1);
    CLI::App* check = diss->add_subcommand("check", "admissibility report");
    CLI::App* construct =
        diss->add_subcommand("construct", "real-eigenvalue interaction");
    CLI::App* evolve = diss->add_subcommand("evolve", "semigroup norm trace");

    for (CLI::App* sub : {spectrum, figure, resolvent, closeness, check,
                          construct, evolve})
        add_common(sub, o);
    resolvent->add_option("--lambda", o.lambda, "spectral parameter")->required();
    construct->add_option("--lambda", o.lambda, "target real eigenvalue")
        ->required();
    evolve->add_option("--times", o.times, "comma-separated sample times")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        const ProblemFile pf = load_problem(o.input);
        const double b = o.b > 0.0 ? o.b : pf.b;
        const int window = o.window > 0 ? o.window : pf.spec.ctrl.window;
        if (spectrum->parsed()) return cmd_spectrum(pf, o, b, window);
        if (figure->parsed()) return cmd_figure(pf, o, b, window);
        if (resolvent->parsed()) return cmd_resolvent(pf, o, b, window);
        if (closeness->parsed()) return cmd_closeness(pf, o, b, window);
        if (check->parsed()) return cmd_dissipative_check(pf, o, b, window);
        if (construct->parsed()) return cmd_dissipative_construct(pf, o, b, window);
        if (evolve->parsed()) return cmd_dissipative_evolve(pf, o, b, window);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const HypothesisViolationError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
