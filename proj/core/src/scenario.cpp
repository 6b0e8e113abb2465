#include "orbitlab/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <ctime>
#include <fstream>
#include <sstream>

#include "orbitlab/audit.hpp"
#include "orbitlab/density.hpp"
#include "orbitlab/errors.hpp"
#include "orbitlab/lattice.hpp"
#include "orbitlab/volume.hpp"

namespace orbitlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::ofstream open_output(RunContext& ctx, const std::string& name) {
    std::filesystem::create_directories(ctx.out_dir);
    auto path = ctx.out_dir / name;
    std::ofstream os(path);
    if (!os) throw Error("cannot open output file: " + path.string());
    ctx.outputs.push_back(name);
    return os;
}

double get_inf(const nlohmann::json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kPInf;
        throw ConfigError("p must be a number or \"inf\"");
    }
    return j.get<double>();
}

RealMatrix json_matrix(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("matrix must be an array of rows");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    RealMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j[static_cast<std::size_t>(i)].size()) != cols)
            throw ConfigError("ragged matrix");
        for (int k = 0; k < cols; ++k)
            m.at(i, k) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].get<double>();
    }
    return m;
}

RealMatrix rotation3(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return RealMatrix(3, 3, {c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0});
}

std::string timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

nlohmann::json merge_config(const nlohmann::json& defaults, const nlohmann::json& user,
                            const std::string& where) {
    if (!user.is_object()) throw ConfigError(where + ": config must be a JSON object");
    nlohmann::json out = defaults;
    for (auto it = user.begin(); it != user.end(); ++it) {
        if (!defaults.contains(it.key()))
            throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
        out[it.key()] = it.value();
    }
    return out;
}

GroupSpec parse_group(const std::string& s) {
    if (s.rfind("sl", 0) == 0 && s.size() > 2 && std::isdigit(static_cast<unsigned char>(s[2]))) {
        int n = std::stoi(s.substr(2));
        return make_sl(n);
    }
    int a = 0, b = 0;
    if (std::sscanf(s.c_str(), "so(%d,%d)", &a, &b) == 2) return make_sopq(a, b);
    if (std::sscanf(s.c_str(), "tensor(%d)", &a) == 1) return make_sl2xsl2_tensor(a);
    throw ConfigError("unknown group \"" + s + "\" (expected sl<n>, so(p,q), tensor(ell))");
}

NormSpec parse_norm(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("type")) throw ConfigError("norm needs a \"type\"");
    std::string type = j.at("type").get<std::string>();
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k != "type" && k != "p" && k != "c" && k != "weights")
            throw ConfigError("unknown norm key \"" + k + "\"");
    }
    if (type == "entrywise") return EntrywisePNorm{j.contains("p") ? get_inf(j.at("p")) : 2.0};
    if (type == "max-column") return MaxColumnNorm{j.contains("p") ? get_inf(j.at("p")) : 2.0};
    if (type == "spiral") return SpiralNorm{j.contains("c") ? j.at("c").get<double>() : 1.1};
    if (type == "weighted") {
        WeightedEntrywise w;
        if (j.contains("weights")) w.weights = j.at("weights").get<std::vector<double>>();
        if (j.contains("p")) w.p = get_inf(j.at("p"));
        return w;
    }
    throw ConfigError("unknown norm type \"" + type + "\"");
}

std::vector<std::string> scenario_names() {
    return {"ledrappier", "torus",       "translate-modular", "spiral-d2",
            "nonbalanced", "oppenheim",  "volume-sweep",      "audit"};
}

nlohmann::json default_config(const std::string& scenario) {
    using nlohmann::json;
    if (scenario == "ledrappier")
        return {{"v", {1.0, 1.4142135623730951}},
                {"p", 2.0},
                {"schedule", {250.0, 500.0, 1000.0, 2000.0}},
                {"bump_rmin", 0.5},
                {"bump_rmax", 3.0},
                {"angular_nodes", 32},
                {"budget", 4000000000L}};
    if (scenario == "torus")
        return {{"T", 300.0},
                {"x0", {0.41421356237309515, 0.7320508075688772}},
                {"control_x0", {0.0, 0.0}},
                {"ks", {{1, 0}, {0, 1}, {1, 1}, {2, -1}}},
                {"p", 2.0},
                {"budget", 400000000L}};
    if (scenario == "translate-modular")
        return {{"T", 150.0},
                {"g0", {{1.2, 0.3}, {0.5, 0.9583333333333334}}},
                {"y_cuts", {1.1, 1.4}},
                {"p", 2.0},
                {"budget", 400000000L}};
    if (scenario == "spiral-d2")
        return {{"c", 1.1},
                {"n_list", {1, 2, 3, 4}},
                {"osc_tol", 0.05},
                {"witness_angle", 0.5 * kPi}};
    if (scenario == "nonbalanced")
        return {{"ell", 3},
                {"t2_max", 4.0},
                {"T_list", {1000.0, 10000.0}},
                {"norms",
                 {{{"type", "entrywise"}, {"p", 2.0}}, {{"type", "max-column"}, {"p", 2.0}}}},
                {"samples", 200},
                {"threshold", 0.1}};
    if (scenario == "oppenheim")
        return {{"q", {1.0, 1.0, -1.4142135623730951}},
                {"box_lo", {0.5, -0.5, -0.5, 0.5, -0.5, -2.0}},
                {"box_hi", {1.5, 0.5, 0.5, 1.5, 0.5, -1.0}},
                {"T_list", {20.0, 40.0, 80.0}},
                {"budget", 400000000L}};
    if (scenario == "volume-sweep")
        return {{"group", "sl2"},
                {"norm", {{"type", "entrywise"}, {"p", 2.0}}},
                {"tmin", 10.0},
                {"tmax", 1000.0},
                {"points", 8},
                {"method", "haar"},
                {"angular_nodes", 16},
                {"samples", 4000}};
    if (scenario == "audit")
        return {{"condition", "uc"},
                {"group", "sl2"},
                {"norm", {{"type", "entrywise"}, {"p", 2.0}}},
                {"eps_list", {0.5, 0.1, 0.02}},
                {"T_grid", {50.0, 100.0, 200.0}},
                {"samples", 64},
                {"flat_tol", 0.1},
                {"budget", 400000000L},
                {"c", 1.1},
                {"witness_angle", 0.5 * kPi},
                {"pair_angles", {0.0, 0.7853981633974483, 1.5707963267948966}},
                {"schedule", json::array()},
                {"osc_tol", 0.05}};
    throw ConfigError("unknown scenario \"" + scenario + "\"");
}

namespace {

// --- ledrappier: lattice orbit sums vs the ambient Haar average ------------

nlohmann::json run_ledrappier(const nlohmann::json& cfg, RunContext& ctx) {
    auto v = cfg.at("v").get<std::vector<double>>();
    if (v.size() != 2) throw ConfigError("v must be planar");
    NormSpec norm = EntrywisePNorm{get_inf(cfg.at("p"))};
    auto schedule = cfg.at("schedule").get<std::vector<double>>();
    double rmin = cfg.at("bump_rmin").get<double>(), rmax = cfg.at("bump_rmax").get<double>();
    TestFunction phi = RadialBump{rmin, rmax};
    long budget = cfg.at("budget").get<long>();
    LatticeSpec lat{LatticeFamily::SL, 2};
    GroupSpec gs = make_sl(2);
    int nodes = cfg.at("angular_nodes").get<int>();

    auto os = open_output(ctx, "ledrappier.csv");
    os << "T,count,orbit_sum,volume,covolume_hat,ambient,ratio,abs_err\n";

    nlohmann::json rows = nlohmann::json::array();
    std::vector<double> errs;
    for (double T : schedule) {
        double s = 0.0;
        long count = for_each_ball_element(lat, norm, T, [&](const ExactMatrix& g) {
            s += test_eval(phi, row_times(v, g));
        }, budget);
        double vol = haar_volume({gs, norm, RealMatrix::identity(2), RealMatrix::identity(2)},
                                 T, VolumeMethod::Quadrature, {}, nodes).value;
        double covol = vol / static_cast<double>(count);
        double amb = g_orbit_integral_fiber(phi, v, norm, T, rmax);
        double ratio = s * covol / amb;
        double err = std::fabs(ratio - 1.0);
        errs.push_back(err);
        os << T << ',' << count << ',' << s << ',' << vol << ',' << covol << ','
           << amb << ',' << ratio << ',' << err << '\n';
        rows.push_back({{"T", T},
                        {"count", count},
                        {"orbit_sum", s},
                        {"volume", vol},
                        {"covolume_hat", covol},
                        {"ambient", amb},
                        {"ratio", ratio},
                        {"abs_err", err}});
    }
    int improving = 0;
    for (std::size_t i = 1; i < errs.size(); ++i)
        if (errs[i] <= errs[i - 1]) ++improving;
    double final_err = errs.empty() ? 1.0 : errs.back();
    int steps = static_cast<int>(errs.size()) - 1;
    return {{"rows", rows},
            {"final_abs_err", final_err},
            {"nonincreasing_steps", improving},
            {"steps", steps},
            {"verdicts",
             {{"final_error_within_10pct", final_err <= 0.10},
              {"errors_mostly_nonincreasing", steps < 2 || improving >= steps - 1}}}};
}

// --- torus: Weyl sums for the dual action on the 2-torus -------------------

nlohmann::json run_torus(const nlohmann::json& cfg, RunContext& ctx) {
    double T = cfg.at("T").get<double>();
    NormSpec norm = EntrywisePNorm{get_inf(cfg.at("p"))};
    long budget = cfg.at("budget").get<long>();
    auto x0 = cfg.at("x0").get<std::vector<double>>();
    auto ctrl = cfg.at("control_x0").get<std::vector<double>>();
    auto ks = cfg.at("ks").get<std::vector<std::vector<std::int64_t>>>();
    LatticeSpec lat{LatticeFamily::SL, 2};

    auto os = open_output(ctx, "torus.csv");
    os << "point,k1,k2,re,im,abs,count\n";
    nlohmann::json rows = nlohmann::json::array();
    double worst = 0.0, ctrl_min = 1.0;
    long count = 0;
    for (const auto& k : ks) {
        auto w = weyl_sum(lat, norm, T, k, x0, &count, budget);
        worst = std::max(worst, std::abs(w));
        os << "irrational," << k[0] << ',' << k[1] << ',' << w.real() << ',' << w.imag()
           << ',' << std::abs(w) << ',' << count << '\n';
        rows.push_back({{"point", "irrational"}, {"k", k}, {"re", w.real()},
                        {"im", w.imag()}, {"abs", std::abs(w)}});
        auto wc = weyl_sum(lat, norm, T, k, ctrl, &count, budget);
        ctrl_min = std::min(ctrl_min, std::abs(wc));
        os << "control," << k[0] << ',' << k[1] << ',' << wc.real() << ',' << wc.imag()
           << ',' << std::abs(wc) << ',' << count << '\n';
        rows.push_back({{"point", "control"}, {"k", k}, {"re", wc.real()},
                        {"im", wc.imag()}, {"abs", std::abs(wc)}});
    }
    return {{"rows", rows},
            {"count", count},
            {"max_abs_irrational", worst},
            {"min_abs_control", ctrl_min},
            {"verdicts",
             {{"weyl_sums_decay", worst <= 0.05}, {"rational_control_large", ctrl_min > 0.5}}}};
}

// --- translate-modular: translated orbit points in the modular surface -----

namespace modular {

std::complex<double> mobius(const RealMatrix& g, std::complex<double> z) {
    return (g.at(0, 0) * z + g.at(0, 1)) / (g.at(1, 0) * z + g.at(1, 1));
}

// Reduce into the standard fundamental domain {|Re z| <= 1/2, |z| >= 1}.
std::complex<double> reduce(std::complex<double> z) {
    for (int i = 0; i < 200; ++i) {
        double shift = std::round(z.real());
        z -= shift;
        if (std::norm(z) < 1.0 - 1e-15)
            z = -1.0 / z;
        else
            return z;
    }
    throw Error("fundamental-domain reduction did not terminate");
}

// Hyperbolic area of {x in [xlo, xhi], max(sqrt(1-x^2), ylo) <= y < yhi}
// inside the fundamental domain; yhi = +inf allowed.
double cell_area(double xlo, double xhi, double ylo, double yhi) {
    Fn1 f = [&](double x) {
        double base = std::max(x * x < 1.0 ? std::sqrt(1.0 - x * x) : 0.0, ylo);
        double top = yhi;
        if (top <= base) return 0.0;
        double inv_top = std::isinf(top) ? 0.0 : 1.0 / top;
        return 1.0 / base - inv_top;
    };
    return adaptive_simpson(f, xlo, xhi, 1e-10);
}

} // namespace modular

nlohmann::json run_translate_modular(const nlohmann::json& cfg, RunContext& ctx) {
    double T = cfg.at("T").get<double>();
    NormSpec norm = EntrywisePNorm{get_inf(cfg.at("p"))};
    long budget = cfg.at("budget").get<long>();
    RealMatrix g0 = json_matrix(cfg.at("g0"));
    if (g0.rows() != 2 || g0.cols() != 2 || std::fabs(g0.det() - 1.0) > 1e-9)
        throw ConfigError("g0 must be 2x2 with det 1");
    auto cuts = cfg.at("y_cuts").get<std::vector<double>>();
    if (cuts.size() != 2 || cuts[0] >= cuts[1] || cuts[0] <= 1.0)
        throw ConfigError("y_cuts must be increasing and > 1");
    LatticeSpec lat{LatticeFamily::SL, 2};

    // Six cells: x sign crossed with three y bands.
    std::vector<double> area(6, 0.0);
    double ybands[4] = {0.0, cuts[0], cuts[1], kPInf};
    for (int sx = 0; sx < 2; ++sx)
        for (int b = 0; b < 3; ++b)
            area[static_cast<std::size_t>(sx + 2 * b)] = modular::cell_area(
                sx == 0 ? -0.5 : 0.0, sx == 0 ? 0.0 : 0.5, ybands[b], ybands[b + 1]);
    double total_area = 0.0;
    for (double a : area) total_area += a;

    struct PointStats {
        std::vector<long> hist = std::vector<long>(6, 0);
        long n = 0;
        long near_i = 0;
    };
    auto run_point = [&](const RealMatrix& base) {
        RealMatrix inv = base.inverse();
        PointStats st;
        st.n = for_each_ball_element(lat, norm, T, [&](const ExactMatrix& gamma) {
            RealMatrix m = inv * gamma.real();
            auto z = modular::reduce(modular::mobius(m, {0.0, 1.0}));
            if (std::abs(z - std::complex<double>(0.0, 1.0)) < 1e-6) ++st.near_i;
            int sx = z.real() < 0.0 ? 0 : 1;
            int b = z.imag() < cuts[0] ? 0 : (z.imag() < cuts[1] ? 1 : 2);
            ++st.hist[static_cast<std::size_t>(sx + 2 * b)];
        }, budget);
        return st;
    };

    PointStats pt = run_point(g0);
    PointStats ctrl = run_point(RealMatrix::identity(2));
    const auto& hist = pt.hist;
    long n = pt.n;
    const auto& hist_id = ctrl.hist;
    long n_id = ctrl.n;

    auto os = open_output(ctx, "translate_modular.csv");
    os << "cell,x_sign,y_band,area,expected_fraction,observed_fraction,control_fraction\n";
    nlohmann::json rows = nlohmann::json::array();
    double linf = 0.0;
    for (int c = 0; c < 6; ++c) {
        auto idx = static_cast<std::size_t>(c);
        double expd = area[idx] / total_area;
        double obs = static_cast<double>(hist[idx]) / static_cast<double>(n);
        double ctrlf = static_cast<double>(hist_id[idx]) / static_cast<double>(n_id);
        linf = std::max(linf, std::fabs(obs - expd));
        os << c << ',' << (c % 2 == 0 ? "neg" : "pos") << ',' << c / 2 << ',' << area[idx]
           << ',' << expd << ',' << obs << ',' << ctrlf << '\n';
        rows.push_back({{"cell", c}, {"area", area[idx]}, {"expected", expd},
                        {"observed", obs}, {"control", ctrlf}});
    }
    // Control: every orbit point of the identity reduces to i itself.
    double ctrl_mass_at_i = static_cast<double>(ctrl.near_i) / static_cast<double>(n_id);
    return {{"rows", rows},
            {"count", n},
            {"total_area", total_area},
            {"linf_discrepancy", linf},
            {"control_mass_near_i", ctrl_mass_at_i},
            {"verdicts",
             {{"cell_discrepancy_small", linf <= 0.05},
              {"identity_control_collapses_to_i", ctrl_mass_at_i >= 0.999}}}};
}

// --- spiral-d2: the oscillating-ratio counterexample ------------------------

nlohmann::json run_spiral_d2(const nlohmann::json& cfg, RunContext& ctx) {
    double c = cfg.at("c").get<double>();
    auto n_list = cfg.at("n_list").get<std::vector<int>>();
    double osc_tol = cfg.at("osc_tol").get<double>();
    double angle = cfg.at("witness_angle").get<double>();
    SkewVolumeFn vol = spiral_volume_model(c);
    RealMatrix g1 = rotation3(angle), id3 = RealMatrix::identity(3);

    auto os = open_output(ctx, "spiral_d2.csv");
    os << "n,kind,T,vol_over_T4,limit_target,skew_ratio,ratio_target\n";
    nlohmann::json rows = nlohmann::json::array();
    std::vector<double> schedule;
    double worst_vol_err = 0.0, worst_ratio_err = 0.0;
    for (int n : n_list) {
        struct Point {
            const char* kind;
            double T, vol_target, ratio_target;
        };
        double Tn = c * std::exp(2.0 * kPi * n);
        double Sn = std::exp(0.5 * kPi + 2.0 * kPi * n);
        Point pts[2] = {{"T_n", Tn, 0.5 * kPi / (c * c), c * c},
                        {"S_n", Sn, 0.5 * kPi, 1.0 / (c * c)}};
        for (const auto& pt : pts) {
            schedule.push_back(pt.T);
            double plain = vol(id3, id3, pt.T);
            double scaled = plain / std::pow(pt.T, 4);
            double ratio = vol(g1, id3, pt.T) / plain;
            worst_vol_err = std::max(worst_vol_err, std::fabs(scaled / pt.vol_target - 1.0));
            if (n >= 2)
                worst_ratio_err =
                    std::max(worst_ratio_err, std::fabs(ratio / pt.ratio_target - 1.0));
            os << n << ',' << pt.kind << ',' << pt.T << ',' << scaled << ','
               << pt.vol_target << ',' << ratio << ',' << pt.ratio_target << '\n';
            rows.push_back({{"n", n}, {"kind", pt.kind}, {"T", pt.T},
                            {"vol_over_T4", scaled}, {"limit_target", pt.vol_target},
                            {"skew_ratio", ratio}, {"ratio_target", pt.ratio_target}});
        }
    }
    std::sort(schedule.begin(), schedule.end());
    AuditReport rep = audit_d2(vol, g1, id3, schedule, osc_tol);
    (void)ctx;
    return {{"rows", rows},
            {"worst_vol_err", worst_vol_err},
            {"worst_ratio_err_tail", worst_ratio_err},
            {"audit_verdict", verdict_name(rep.verdict)},
            {"audit", rep.details},
            {"verdicts",
             {{"volume_limits_within_3pct", worst_vol_err <= 0.03},
              {"ratio_band_within_5pct", worst_ratio_err <= 0.05},
              {"d2_audit_detects_oscillation", rep.verdict == AuditVerdict::Fail}}}};
}

// --- nonbalanced: volume share near the chamber wall for 2 (x) Sym^{ell-1} --

nlohmann::json run_nonbalanced(const nlohmann::json& cfg, RunContext& ctx) {
    int ell = cfg.at("ell").get<int>();
    double t2_max = cfg.at("t2_max").get<double>();
    auto T_list = cfg.at("T_list").get<std::vector<double>>();
    long samples = cfg.at("samples").get<long>();
    double threshold = cfg.at("threshold").get<double>();
    GroupSpec gs = make_sl2xsl2_tensor(ell);
    auto bal = balanced_verdict(gs);

    auto os = open_output(ctx, "nonbalanced.csv");
    os << "norm,T,wall_fraction\n";
    nlohmann::json rows = nlohmann::json::array();
    bool all_above = true;
    std::vector<std::string> verdict_per_norm;
    for (const auto& nj : cfg.at("norms")) {
        NormSpec norm = parse_norm(nj);
        bool norm_above = true;
        for (double T : T_list) {
            double num = 0.0, den = 0.0;
            for (long s = 0; s < samples; ++s) {
                RngStream rng(ctx.seed, static_cast<std::uint64_t>(s) + 1);
                std::vector<double> a1{rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi)};
                std::vector<double> a2{rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi)};
                RealMatrix A = rep_compact(gs, a1), B = rep_compact(gs, a2);
                num += chamber_integral_slab(gs, norm, T, A, B, t2_max);
                den += chamber_integral_slab(gs, norm, T, A, B, kPInf);
            }
            double frac = den > 0.0 ? num / den : 0.0;
            norm_above = norm_above && frac > threshold;
            os << norm_name(norm) << ',' << T << ',' << frac << '\n';
            rows.push_back({{"norm", norm_name(norm)}, {"T", T}, {"wall_fraction", frac}});
        }
        verdict_per_norm.push_back(norm_above ? "wall-heavy" : "wall-light");
        all_above = all_above && norm_above;
    }
    bool agree = std::all_of(verdict_per_norm.begin(), verdict_per_norm.end(),
                             [&](const std::string& s) { return s == verdict_per_norm.front(); });
    return {{"rows", rows},
            {"balanced_verdict", bal.verdict == BalancedVerdict::Balanced
                                     ? "Balanced"
                                     : (bal.verdict == BalancedVerdict::NotBalanced ? "NotBalanced"
                                                                                    : "Unknown")},
            {"balanced_reason", bal.reason},
            {"wall_fraction_above_threshold", all_above},
            {"norms_agree", agree},
            {"verdicts",
             {{"wall_fraction_above_threshold", all_above}, {"norms_agree", agree}}}};
}

// --- oppenheim: frames of an indefinite form with pinned Gram data ----------

nlohmann::json run_oppenheim(const nlohmann::json& cfg, RunContext& ctx) {
    auto q = cfg.at("q").get<std::vector<double>>();
    GramBox box{cfg.at("box_lo").get<std::vector<double>>(),
                cfg.at("box_hi").get<std::vector<double>>()};
    auto T_list = cfg.at("T_list").get<std::vector<double>>();
    long budget = cfg.at("budget").get<long>();
    NormSpec norm = EntrywisePNorm{kPInf};

    auto os = open_output(ctx, "oppenheim.csv");
    os << "T,count\n";
    nlohmann::json rows = nlohmann::json::array();
    std::vector<double> logT, logN;
    for (double T : T_list) {
        long n = count_frames_in_gram_box(q, box, norm, T, budget);
        os << T << ',' << n << '\n';
        rows.push_back({{"T", T}, {"count", n}});
        if (n > 0) {
            logT.push_back(std::log(T));
            logN.push_back(std::log(static_cast<double>(n)));
        }
    }
    (void)ctx;
    double slope = 0.0;
    if (logT.size() >= 2) {
        // Least-squares slope of log N against log T.
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < logT.size(); ++i) {
            mx += logT[i];
            my += logN[i];
        }
        mx /= static_cast<double>(logT.size());
        my /= static_cast<double>(logT.size());
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t i = 0; i < logT.size(); ++i) {
            sxy += (logT[i] - mx) * (logN[i] - my);
            sxx += (logT[i] - mx) * (logT[i] - mx);
        }
        slope = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    bool growing = true;
    for (std::size_t i = 1; i < logN.size(); ++i)
        if (logN[i] < logN[i - 1]) growing = false;
    return {{"rows", rows},
            {"loglog_slope", slope},
            {"verdicts",
             {{"counts_positive", !logN.empty()}, {"counts_nondecreasing", growing}}}};
}

// --- volume-sweep ------------------------------------------------------------

nlohmann::json run_volume_sweep(const nlohmann::json& cfg, RunContext& ctx) {
    GroupSpec gs = parse_group(cfg.at("group").get<std::string>());
    NormSpec norm = parse_norm(cfg.at("norm"));
    double tmin = cfg.at("tmin").get<double>(), tmax = cfg.at("tmax").get<double>();
    int points = cfg.at("points").get<int>();
    std::string method = cfg.at("method").get<std::string>();
    if (points < 2 || tmin <= 1.0 || tmax <= tmin) throw ConfigError("bad sweep grid");
    McParams mc;
    mc.samples = cfg.at("samples").get<long>();
    mc.seed = ctx.seed;
    int nodes = cfg.at("angular_nodes").get<int>();

    auto os = open_output(ctx, "volume_sweep.csv");
    os << "T,volume,running_slope\n";
    nlohmann::json rows = nlohmann::json::array();
    double prev_T = 0.0, prev_v = 0.0;
    for (int i = 0; i < points; ++i) {
        double T = tmin * std::pow(tmax / tmin, static_cast<double>(i) / (points - 1));
        double v;
        if (method == "chamber") {
            v = chamber_sector_volume(gs, norm, T, mc);
        } else if (method == "haar") {
            SkewBall ball{gs, norm, RealMatrix::identity(gs.rep_dim),
                          RealMatrix::identity(gs.rep_dim)};
            v = compact_angle_count(gs) == 1
                    ? haar_volume(ball, T, VolumeMethod::Quadrature, mc, nodes).value
                    : haar_volume(ball, T, VolumeMethod::MonteCarlo, mc).value;
        } else {
            throw ConfigError("method must be \"chamber\" or \"haar\"");
        }
        double slope = 0.0;
        if (i > 0 && prev_v > 0.0 && v > 0.0)
            slope = std::log(v / prev_v) / std::log(T / prev_T);
        os << T << ',' << v << ',' << slope << '\n';
        rows.push_back({{"T", T}, {"volume", v}, {"running_slope", slope}});
        prev_T = T;
        prev_v = v;
    }
    auto ge = growth_exponents(gs);
    return {{"rows", rows},
            {"expected_power", ge.m.value()},
            {"condition_g", ge.condition_g}};
}

// --- audit -------------------------------------------------------------------

nlohmann::json run_audit(const nlohmann::json& cfg, RunContext& ctx) {
    std::string cond = cfg.at("condition").get<std::string>();
    NormSpec norm = parse_norm(cfg.at("norm"));
    auto eps_list = cfg.at("eps_list").get<std::vector<double>>();
    auto T_grid = cfg.at("T_grid").get<std::vector<double>>();

    AuditReport rep;
    if (cond == "uc") {
        rep = audit_uc(norm, eps_list, cfg.at("samples").get<int>(), ctx.seed);
    } else if (cond == "i1") {
        rep = audit_i1(parse_group(cfg.at("group").get<std::string>()), norm, eps_list, T_grid);
    } else if (cond == "i2") {
        GroupSpec gs = parse_group(cfg.at("group").get<std::string>());
        LatticeSpec lat{LatticeFamily::SL, gs.rep_dim};
        rep = audit_i2(lat, gs, norm, T_grid, cfg.at("flat_tol").get<double>(),
                       cfg.at("budget").get<long>());
    } else if (cond == "d1" || cond == "d2") {
        double c = cfg.at("c").get<double>();
        SkewVolumeFn vol = spiral_volume_model(c);
        if (cond == "d1") {
            std::vector<std::pair<RealMatrix, RealMatrix>> pairs;
            for (double a : cfg.at("pair_angles").get<std::vector<double>>())
                pairs.emplace_back(rotation3(a), RealMatrix::identity(3));
            rep = audit_d1(vol, pairs, eps_list, T_grid);
        } else {
            std::vector<double> schedule = cfg.at("schedule").get<std::vector<double>>();
            if (schedule.empty())
                for (int n = 1; n <= 4; ++n) {
                    schedule.push_back(c * std::exp(2.0 * kPi * n));
                    schedule.push_back(std::exp(0.5 * kPi + 2.0 * kPi * n));
                }
            rep = audit_d2(vol, rotation3(cfg.at("witness_angle").get<double>()),
                           RealMatrix::identity(3), schedule, cfg.at("osc_tol").get<double>());
        }
    } else {
        throw ConfigError("unknown audit condition \"" + cond + "\"");
    }
    auto os = open_output(ctx, "audit_" + cond + ".json");
    nlohmann::json out = {{"condition", rep.condition},
                          {"verdict", verdict_name(rep.verdict)},
                          {"details", rep.details}};
    os << out.dump(2) << '\n';
    return out;
}

} // namespace

nlohmann::json run_scenario(const std::string& name, const nlohmann::json& user_cfg,
                            RunContext& ctx) {
    nlohmann::json cfg = merge_config(default_config(name), user_cfg, name);
    if (name == "ledrappier") return run_ledrappier(cfg, ctx);
    if (name == "torus") return run_torus(cfg, ctx);
    if (name == "translate-modular") return run_translate_modular(cfg, ctx);
    if (name == "spiral-d2") return run_spiral_d2(cfg, ctx);
    if (name == "nonbalanced") return run_nonbalanced(cfg, ctx);
    if (name == "oppenheim") return run_oppenheim(cfg, ctx);
    if (name == "volume-sweep") return run_volume_sweep(cfg, ctx);
    if (name == "audit") return run_audit(cfg, ctx);
    throw ConfigError("unknown scenario \"" + name + "\"");
}

void write_manifest(RunContext& ctx, const std::string& scenario,
                    const nlohmann::json& cfg, const nlohmann::json& results) {
    std::ostringstream hex;
    hex << std::hex << fnv1a(cfg.dump());
    nlohmann::json m = {{"scenario", scenario},
                        {"timestamp", timestamp_utc()},
                        {"seed", ctx.seed},
                        {"threads", ctx.threads},
                        {"config", cfg},
                        {"config_fnv1a", hex.str()},
                        {"outputs", ctx.outputs},
                        {"results", results}};
    auto os = open_output(ctx, "manifest.json");
    os << m.dump(2) << '\n';
}

} // namespace orbitlab
