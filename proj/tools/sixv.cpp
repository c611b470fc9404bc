// Command-line front end: curve / sample / enumerate / phi / verify / stats.
//
// Configuration comes from an optional JSON file (--config) with full
// flag-level override (flags win).  Every run writes a manifest.json with the
// exact parameters needed to reproduce it.  Outputs are never overwritten
// unless --force is given.
//
// Exit codes: 0 ok, 2 invalid configuration, 3 verification failure,
//             4 budget exceeded.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sixv/analysis.hpp>
#include <sixv/exact.hpp>
#include <sixv/formulas.hpp>
#include <sixv/sampler.hpp>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::json;
using namespace sixv;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0, kExitConfig = 2, kExitVerify = 3, kExitBudget = 4;

struct RunConfig {
    // either (a,b,c)+N or (A,B,C); exactly one of the two forms
    double a = -1, b = -1, c = -1;
    int N = 0;
    int A = -1, B = -1, C = -1;
    double psi = -1;  // scaled; Psi = floor(psi * N)
    int Psi = -1;     // lattice units; wins over psi if both given
    uint64_t seed = 0;
    std::string mode = "glauber";
    long long samples = 16;
    uint64_t events = 0;   // glauber: spacing between samples; cftp: event budget
    uint64_t burnIn = 0;   // 0 = library default
    std::string outDir = "out";
    bool force = false;

    bool hasScaled() const { return a >= 0 && b >= 0 && c >= 0 && N > 0; }
    bool hasLattice() const { return A >= 0 && B >= 0 && C >= 1; }

    void resolve() {
        if (hasScaled() == hasLattice())
            throw CLI::ValidationError(
                "params", "give exactly one of (--a --b --c --N) or (--A --B --C)");
        if (hasScaled()) {
            if (std::abs(a + b + c - 1.0) > 1e-9)
                throw CLI::ValidationError("params", "a + b + c must equal 1");
            A = static_cast<int>(std::floor(a * N));
            B = static_cast<int>(std::floor(b * N));
            C = static_cast<int>(std::floor(c * N));
        }
        if (Psi < 0 && psi >= 0) {
            int n = N > 0 ? N : A + B + C;
            Psi = static_cast<int>(std::floor(psi * n));
        }
        if (Psi < 0) Psi = 0;
    }

    Domain domain() const { return Psi > 0 ? Domain(A, B, C, Psi) : Domain(A, B, C); }
    bool scaledKnown() const { return a >= 0; }
    CurveParams curveParams() const { return CurveParams(a, b, c); }

    json manifest(const std::string& command) const {
        json m;
        m["command"] = command;
        m["A"] = A;
        m["B"] = B;
        m["C"] = C;
        m["Psi"] = Psi;
        if (scaledKnown()) {
            m["a"] = a;
            m["b"] = b;
            m["c"] = c;
            m["N"] = N;
        }
        m["seed"] = seed;
        m["mode"] = mode;
        m["samples"] = samples;
        m["events"] = events;
        m["burn_in"] = burnIn;
        return m;
    }
};

void addCommonFlags(CLI::App* cmd, RunConfig& rc, std::string& configPath) {
    cmd->add_option("--config", configPath, "JSON config file (flags override it)");
    cmd->add_option("--a", rc.a, "scaled bundle density a");
    cmd->add_option("--b", rc.b, "scaled bundle density b");
    cmd->add_option("--c", rc.c, "scaled bundle density c");
    cmd->add_option("--N", rc.N, "lattice scale for (a,b,c)");
    cmd->add_option("--A", rc.A, "bundle size A");
    cmd->add_option("--B", rc.B, "bundle size B");
    cmd->add_option("--C", rc.C, "bundle size C");
    cmd->add_option("--psi", rc.psi, "scaled augmentation depth (Psi = floor(psi N))");
    cmd->add_option("--Psi", rc.Psi, "augmentation depth in lattice units");
    cmd->add_option("--seed", rc.seed, "random clock seed");
    cmd->add_option("--mode", rc.mode, "sampling mode: glauber or cftp")
        ->check(CLI::IsMember({"glauber", "cftp"}));
    cmd->add_option("--samples", rc.samples, "number of samples");
    cmd->add_option("--events", rc.events,
                    "glauber: events between samples; cftp: total event budget");
    cmd->add_option("--burn-in", rc.burnIn, "glauber burn-in events (0 = default)");
    cmd->add_option("--out", rc.outDir, "output directory");
    cmd->add_flag("--force", rc.force, "overwrite existing outputs");
}

std::ofstream openOutput(const RunConfig& rc, const std::string& name) {
    fs::create_directories(rc.outDir);
    fs::path p = fs::path(rc.outDir) / name;
    if (fs::exists(p) && !rc.force)
        throw CLI::ValidationError("output",
                                   p.string() + " exists; pass --force to overwrite");
    std::ofstream os(p);
    if (!os) throw CLI::ValidationError("output", "cannot write " + p.string());
    return os;
}

void writeManifest(const RunConfig& rc, const std::string& command) {
    openOutput(rc, "manifest.json") << rc.manifest(command).dump(2) << "\n";
}

void writeErrorJson(const RunConfig& rc, const std::string& what) {
    try {
        std::ofstream os(fs::path(rc.outDir) / "error.json");
        os << json{{"error", what}}.dump(2) << "\n";
    } catch (...) {
    }
}

// --- curve ------------------------------------------------------------------

int cmdCurve(RunConfig rc) {
    if (!(rc.a >= 0 && rc.b >= 0 && rc.c >= 0))
        throw CLI::ValidationError("params", "curve needs --a --b --c");
    if (std::abs(rc.a + rc.b + rc.c - 1.0) > 1e-9 || rc.a < 0 || rc.b < 0 || rc.c <= 0)
        throw CLI::ValidationError("params", "(a,b,c) must lie on the simplex, c > 0");
    CurveParams p(rc.a, rc.b, rc.c);
    ArcticGeometry ag(p);

    auto csv = openOutput(rc, "curves.csv");
    csv << "piece,x,y\n";
    for (size_t i = 0; i < ag.pieces.size(); ++i)
        for (const Vec2& v : ag.pieces[i])
            csv << pieceName(ag.tags[i]) << "," << v.x << "," << v.y << "\n";

    // self-contained SVG: domain outline plus the four pieces
    auto svg = openOutput(rc, "curves.svg");
    const double S = 360, mx = 20, my = 20;  // scale and margins
    auto X = [&](double x) { return mx + S * x; };
    auto Y = [&](double y) { return my + S * (1 + rc.a) - S * y; };
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
        << 2 * mx + S * (1 + rc.b) << "\" height=\"" << 2 * my + S * (1 + rc.a) << "\">\n";
    double ab = rc.a + rc.b, w = 1 + rc.b, h = 1 + rc.a;
    svg << "<polygon fill=\"none\" stroke=\"black\" points=\"";
    for (Vec2 v : std::vector<Vec2>{{0, 0}, {w, 0}, {w, h}, {ab, h}, {ab, 1}, {0, 1}})
        svg << X(v.x) << "," << Y(v.y) << " ";
    svg << "\"/>\n";
    const char* colors[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad"};
    for (size_t i = 0; i < ag.pieces.size(); ++i) {
        svg << "<polyline fill=\"none\" stroke=\"" << colors[i % 4] << "\" points=\"";
        for (const Vec2& v : ag.pieces[i]) svg << X(v.x) << "," << Y(v.y) << " ";
        svg << "\"/>\n";
    }
    svg << "</svg>\n";
    writeManifest(rc, "curve");
    return kExitOk;
}

// --- sampling helpers ---------------------------------------------------------

template <class Fn>
void forEachSample(const RunConfig& rc, Fn&& fn) {
    Domain d = rc.domain();
    auto bnd = domainWallBoundary(d);
    if (rc.mode == "cftp") {
        uint64_t budget = rc.events ? rc.events : (uint64_t{1} << 30);
        for (long long s = 0; s < rc.samples; ++s)
            fn(cftpSample(d, bnd, rc.seed + static_cast<uint64_t>(s), budget));
        return;
    }
    auto faces = clockFaces(d);
    ChainState st{extremalEnsemble(d, bnd, Side::Min)};
    ClockStream ck(rc.seed);
    run(st, rc.burnIn ? rc.burnIn : defaultBurnIn(faces.size()), ck, faces);
    uint64_t spacing = rc.events ? rc.events : defaultSpacing(faces.size());
    for (long long s = 0; s < rc.samples; ++s) {
        run(st, spacing, ck, faces);
        fn(st.ens);
    }
}

int cmdSample(RunConfig rc, bool aggregateOnly) {
    rc.resolve();
    Domain d = rc.domain();

    std::ostringstream csv;
    csv << "sample_id,K,Phi,Xi,max_dist,hausdorff\n";
    AggregateStats agg;
    FrozenFractionMap fm(d);
    CurveParams cp = rc.scaledKnown() ? rc.curveParams() : CurveParams(0, 0, 1);
    long long id = 0;
    forEachSample(rc, [&](const Ensemble& e) {
        double xi = xiPruned(e.rightmostPath().pts);
        double md = std::nan(""), hd = std::nan("");
        if (rc.scaledKnown()) {
            BoundaryError be = boundaryError(e, cp, rc.N);
            md = be.maxDist;
            hd = be.hausdorff;
        }
        csv << id++ << "," << e.exitK() << "," << e.phi() << "," << xi << "," << md
            << "," << hd << "\n";
        agg.add(e, rc.scaledKnown() ? &cp : nullptr, rc.N);
        fm.add(e);
    });

    json summary;
    summary["samples"] = agg.samples;
    for (auto& [k, n] : agg.kHist) summary["k_hist"][std::to_string(k)] = n;
    for (auto& [k, n] : agg.phiHist) summary["phi_hist"][std::to_string(k)] = n;
    double xs = 0;
    for (double x : agg.xi) xs += x;
    summary["xi_mean"] = agg.xi.empty() ? 0 : xs / double(agg.xi.size());
    if (!agg.hausdorff.empty()) {
        double hs = 0;
        for (double x : agg.hausdorff) hs += x;
        summary["hausdorff_mean"] = hs / double(agg.hausdorff.size());
    }

    if (!aggregateOnly) {
        openOutput(rc, "samples.csv") << csv.str();
        auto fz = openOutput(rc, "frozen_fraction.csv");
        fz << "x,y,fraction\n";
        for (int x = 1; x <= d.width(); ++x)
            for (int y = d.yMin(); y <= d.yMax(); ++y)
                if (d.contains(x, y)) fz << x << "," << y << "," << fm.fraction(x, y) << "\n";
    }
    openOutput(rc, aggregateOnly ? "stats.json" : "summary.json") << summary.dump(2) << "\n";
    writeManifest(rc, aggregateOnly ? "stats" : "sample");
    return kExitOk;
}

// --- enumerate / phi ------------------------------------------------------------

int cmdEnumerate(RunConfig rc) {
    rc.resolve();
    Domain d = rc.domain();
    EnumResult r = enumerateEnsembles(d);
    json summary;
    summary["count"] = r.count.str();
    for (auto& [k, n] : r.kHist) summary["k_hist"][std::to_string(k)] = n;
    for (auto& [k, n] : r.phiHist) summary["phi_hist"][std::to_string(k)] = n;
    auto pmf = exactKPmf(r);
    for (auto& [k, p] : pmf)
        summary["k_pmf"][std::to_string(k)] = BigRat(p).str();
    openOutput(rc, "summary.json") << summary.dump(2) << "\n";
    writeManifest(rc, "enumerate");
    return kExitOk;
}

int cmdPhi(RunConfig rc) {
    rc.resolve();
    if (rc.A < 1)
        throw CLI::ValidationError("params", "phi needs A >= 1 (closed form undefined at A=0)");
    ExactDist dist = phiPmf(rc.A, rc.B, rc.C, rc.Psi);
    auto csv = openOutput(rc, "phi_pmf.csv");
    csv << "X,p\n";
    json summary;
    for (int X = dist.lo; X <= dist.hi; ++X) {
        csv << X << "," << dist.p(X).convert_to<double>() << "\n";
        summary["pmf"][std::to_string(X)] = BigRat(dist.p(X)).str();
    }
    summary["argmax"] = dist.argmax();
    openOutput(rc, "summary.json") << summary.dump(2) << "\n";
    writeManifest(rc, "phi");
    return kExitOk;
}

// --- verify -----------------------------------------------------------------

int cmdVerify(RunConfig rc) {
    int failures = 0;
    auto check = [&](bool ok, const std::string& what) {
        std::printf("%s  %s\n", ok ? "ok  " : "FAIL", what.c_str());
        if (!ok) ++failures;
    };

    // enumeration baseline
    long long want[] = {1, 2, 7, 42, 429};
    bool counts = true;
    for (int C = 1; C <= 5; ++C)
        counts = counts && enumerateEnsembles(Domain(0, 0, C)).count == want[C - 1];
    check(counts, "square-domain counts 1,2,7,42,429");

    // closed form vs enumeration where the closed form is sound (B = 0)
    bool formula = true;
    for (auto [A, C] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
        auto pmf = exactKPmf(enumerateEnsembles(Domain(A, 0, C)));
        for (int k = 1; k <= A + C; ++k) {
            BigRat e = pmf.count(k) ? pmf[k] : BigRat(0);
            if (refinedH(A, 0, C, k) != e) formula = false;
        }
    }
    check(formula, "closed-form refined pmf == enumeration on the B=0 sector");

    // exact normalization
    bool norm = true;
    for (int A = 1; A <= 2; ++A)
        for (int B = 0; B <= 2; ++B)
            for (int C = 1; C <= 2; ++C) {
                BigRat s = 0;
                for (int k = 1; k <= A + 2 * B + C + 1; ++k) s += refinedH(A, B, C + 1, k);
                if (s != 1) norm = false;
            }
    check(norm, "refined pmf sums to exactly 1");

    // monotone coupling
    bool coupled = true;
    try {
        Domain d(0, 0, 4);
        auto bnd = domainWallBoundary(d);
        ChainState lo{extremalEnsemble(d, bnd, Side::Min)};
        ChainState hi{extremalEnsemble(d, bnd, Side::Max)};
        ClockStream ck(rc.seed + 7);
        coupledRun(lo, hi, 20000, ck);
    } catch (const std::exception&) {
        coupled = false;
    }
    check(coupled, "coupled extremal chains preserve the order (2e4 events)");

    // CFTP uniformity (coarse)
    std::map<std::string, long long> cnt;
    Domain d3(0, 0, 3);
    auto b3 = domainWallBoundary(d3);
    for (uint64_t s = 0; s < 2000; ++s)
        cnt[cftpSample(d3, b3, rc.seed + s).serialize()]++;
    double chi2 = 0, expct = 2000 / 7.0;
    for (auto& [k, n] : cnt) chi2 += (n - expct) * (n - expct) / expct;
    check(cnt.size() == 7 && chi2 < 22.458, "CFTP uniform over the 7-element family");

    // curve identities
    CurveParams p(0.25, 0.5, 0.25);
    double legendre = 0;
    for (int i = 0; i < 250; ++i) {
        double z = 1e-4 * std::pow(1e8, i / 249.0);
        auto q = curveSE(z, p);
        legendre = std::max(legendre, std::abs(q.y - z * q.x + zeta(z, p)));
    }
    check(legendre < 1e-12, "Legendre identity along the southeast curve");

    std::printf(failures ? "verify: %d failure(s)\n" : "verify: all properties hold\n",
                failures);
    return failures ? kExitVerify : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"six-vertex three-bundle toolkit"};
    app.require_subcommand(1);

    RunConfig rc;
    std::string configPath;
    app.add_option("--config", configPath, "JSON config file (flags override it)");

    auto* curve = app.add_subcommand("curve", "emit the arctic-boundary pieces");
    auto* sample = app.add_subcommand("sample", "draw samples and per-sample statistics");
    auto* enumerate = app.add_subcommand("enumerate", "exhaustive family enumeration");
    auto* phi = app.add_subcommand("phi", "exact augmented exit distribution");
    auto* verify = app.add_subcommand("verify", "run the oracle-equality suite");
    auto* stats = app.add_subcommand("stats", "aggregate statistics over samples");
    for (auto* cmd : {curve, sample, enumerate, phi, verify, stats})
        addCommonFlags(cmd, rc, configPath);

    CLI11_PARSE(app, argc, argv);

    try {
        if (!configPath.empty()) {
            // config file first, then re-parse so explicit flags win
            std::ifstream is(configPath);
            if (!is) throw CLI::ValidationError("config", "cannot read " + configPath);
            json cfg = json::parse(is);
            auto opt = [&](const char* k, auto& slot) {
                if (cfg.contains(k)) slot = cfg[k].get<std::decay_t<decltype(slot)>>();
            };
            RunConfig fromFile;
            opt("a", fromFile.a);
            opt("b", fromFile.b);
            opt("c", fromFile.c);
            opt("N", fromFile.N);
            opt("A", fromFile.A);
            opt("B", fromFile.B);
            opt("C", fromFile.C);
            opt("psi", fromFile.psi);
            opt("Psi", fromFile.Psi);
            opt("seed", fromFile.seed);
            opt("mode", fromFile.mode);
            opt("samples", fromFile.samples);
            opt("events", fromFile.events);
            opt("burn_in", fromFile.burnIn);
            opt("out", fromFile.outDir);
            // merge: any field still at its default takes the file value
            RunConfig defaults;
            auto merge = [](auto& flag, const auto& file, const auto& dflt) {
                if (flag == dflt) flag = file;
            };
            merge(rc.a, fromFile.a, defaults.a);
            merge(rc.b, fromFile.b, defaults.b);
            merge(rc.c, fromFile.c, defaults.c);
            merge(rc.N, fromFile.N, defaults.N);
            merge(rc.A, fromFile.A, defaults.A);
            merge(rc.B, fromFile.B, defaults.B);
            merge(rc.C, fromFile.C, defaults.C);
            merge(rc.psi, fromFile.psi, defaults.psi);
            merge(rc.Psi, fromFile.Psi, defaults.Psi);
            merge(rc.seed, fromFile.seed, defaults.seed);
            merge(rc.mode, fromFile.mode, defaults.mode);
            merge(rc.samples, fromFile.samples, defaults.samples);
            merge(rc.events, fromFile.events, defaults.events);
            merge(rc.burnIn, fromFile.burnIn, defaults.burnIn);
            merge(rc.outDir, fromFile.outDir, defaults.outDir);
        }

        if (curve->parsed()) return cmdCurve(rc);
        if (sample->parsed()) return cmdSample(rc, false);
        if (stats->parsed()) return cmdSample(rc, true);
        if (enumerate->parsed()) return cmdEnumerate(rc);
        if (phi->parsed()) return cmdPhi(rc);
        if (verify->parsed()) return cmdVerify(rc);
        return kExitConfig;
    } catch (const BudgetExceeded& e) {
        writeErrorJson(rc, e.what());
        std::fprintf(stderr, "budget exceeded: %s\n", e.what());
        return kExitBudget;
    } catch (const CLI::Error& e) {
        writeErrorJson(rc, e.what());
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        writeErrorJson(rc, e.what());
        std::fprintf(stderr, "invalid configuration: %s\n", e.what());
        return kExitConfig;
    }
}
