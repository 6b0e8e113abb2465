#include "orbitlab/audit.hpp"

#include <algorithm>
#include <cmath>

#include "orbitlab/rng.hpp"

namespace orbitlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

nlohmann::json matrix_json(const RealMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(row);
    }
    return rows;
}

// 2x2 matrix exponential by plain scaling-and-squaring + truncated series;
// inputs here always have tiny norm.
RealMatrix expm2(const RealMatrix& x) {
    double scale = 0.0;
    for (double e : x.entries()) scale = std::max(scale, std::fabs(e));
    int squarings = 0;
    RealMatrix y = x;
    while (scale > 0.25) {
        y = y * 0.5;
        scale *= 0.5;
        ++squarings;
    }
    RealMatrix acc = RealMatrix::identity(2), term = RealMatrix::identity(2);
    for (int k = 1; k <= 14; ++k) {
        term = term * y * (1.0 / k);
        acc = acc + term;
    }
    for (int i = 0; i < squarings; ++i) acc = acc * acc;
    return acc;
}

// Coarse-to-fine grid used by the continuity auditors; monotone descent keeps
// the expensive volume laws evaluated only O(grid) times.
const std::vector<double>& delta_grid() {
    static const std::vector<double> g{0.5,   0.25,  0.12,  0.06,  0.03,
                                       0.015, 0.007, 0.003, 0.001};
    return g;
}

double spiral_angle(const RealMatrix& g) {
    if (g.rows() != 3 || g.cols() != 3)
        throw UnsupportedGroup("spiral model: conjugators must be 3x3 block rotations");
    double c = g.at(0, 0), s = g.at(1, 0);
    RealMatrix want(3, 3, {c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (std::fabs(g.at(i, j) - want.at(i, j)) > 1e-9)
                throw UnsupportedGroup("spiral model: conjugators must be 3x3 block rotations");
    return std::atan2(s, c);
}

} // namespace

std::string verdict_name(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::Pass: return "Pass";
        case AuditVerdict::PassWithConstant: return "PassWithConstant";
        case AuditVerdict::Fail: return "Fail";
        case AuditVerdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

SkewVolumeFn skew_volume_model(const GroupSpec& gs, const NormSpec& norm,
                               int angular_nodes) {
    bool quad = compact_angle_count(gs) == 1;
    return [gs, norm, quad, angular_nodes](const RealMatrix& g1, const RealMatrix& g2,
                                           double T) {
        SkewBall ball{gs, norm, g1, g2};
        if (quad)
            return haar_volume(ball, T, VolumeMethod::Quadrature, {}, angular_nodes).value;
        McParams mc;
        mc.samples = 2000;
        return haar_volume(ball, T, VolumeMethod::MonteCarlo, mc).value;
    };
}

SkewVolumeFn spiral_volume_model(double c) {
    return [c](const RealMatrix& g1, const RealMatrix& g2, double T) {
        double shift = spiral_angle(g1) + spiral_angle(g2);
        return spiral_h_volume(c, T, shift).value;
    };
}

AuditReport audit_uc(const NormSpec& norm, const std::vector<double>& eps_list,
                     int samples, std::uint64_t seed) {
    AuditReport rep;
    rep.condition = "uc";
    if (eps_list.empty()) {
        rep.details["note"] = "empty eps list";
        return rep;
    }

    RngStream rng(seed, 0xabcd);
    struct Probe {
        RealMatrix g;
        std::vector<RealMatrix> dirs; // trace-free unit directions in sl(2)
    };
    std::vector<Probe> probes;
    const double max_log = std::log(1e6);
    for (int s = 0; s < samples; ++s) {
        double th1 = rng.uniform(0.0, 2.0 * kPi), th2 = rng.uniform(0.0, 2.0 * kPi);
        double a = rng.uniform(0.0, max_log);
        Probe p;
        p.g = RealMatrix::rotation2(th1) *
              RealMatrix::diagonal({std::exp(0.5 * a), std::exp(-0.5 * a)}) *
              RealMatrix::rotation2(th2);
        p.dirs = {RealMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}),
                  RealMatrix(2, 2, {0.0, 1.0, 0.0, 0.0}),
                  RealMatrix(2, 2, {0.0, 0.0, 1.0, 0.0})};
        for (int k = 0; k < 3; ++k) {
            double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0),
                   z = rng.uniform(-1.0, 1.0);
            double n = std::sqrt(x * x + y * y + z * z);
            if (n < 1e-9) continue;
            p.dirs.emplace_back(2, 2, std::initializer_list<double>{x / n, y / n, z / n, -x / n});
        }
        probes.push_back(std::move(p));
    }

    DistanceFunction dist{norm};
    // For each delta, the smallest eps making the bound hold on every probe.
    nlohmann::json grid_rows = nlohmann::json::array();
    std::vector<double> eps_needed;
    for (double d : delta_grid()) {
        double worst = 0.0;
        for (const auto& p : probes) {
            double base = dist(p.g);
            for (const auto& x : p.dirs) {
                double moved = dist(p.g * expm2(x * d));
                worst = std::max(worst, moved / base - 1.0);
            }
        }
        eps_needed.push_back(worst);
        grid_rows.push_back({{"delta", d}, {"eps_needed", worst}});
    }
    rep.details["grid"] = grid_rows;

    nlohmann::json table = nlohmann::json::array();
    bool all_ok = true;
    for (double eps : eps_list) {
        double best = 0.0;
        for (std::size_t i = 0; i < eps_needed.size(); ++i)
            if (eps_needed[i] <= eps) {
                best = delta_grid()[i];
                break;
            }
        if (eps > 0.0 && best == 0.0) all_ok = false;
        table.push_back({{"eps", eps}, {"delta", best},
                         {"resolved", eps <= 0.0 ? false : best > 0.0}});
    }
    rep.details["eps_table"] = table;
    rep.details["norm"] = norm_name(norm);
    rep.details["samples"] = samples;
    rep.details["seed"] = seed;
    rep.verdict = all_ok ? AuditVerdict::Pass : AuditVerdict::Fail;
    if (!all_ok) rep.details["witness"] = "no delta on the grid satisfies some requested eps";
    return rep;
}

namespace {

// Shared core of i1 / d1: eps_needed(delta) = max over the instance grid of
// vol((1+delta)T)/vol(T) - 1, then invert against the requested eps list.
AuditReport continuity_audit(const std::string& condition,
                             const std::function<double(double)>& worst_growth,
                             const std::vector<double>& eps_list) {
    AuditReport rep;
    rep.condition = condition;
    nlohmann::json grid_rows = nlohmann::json::array();
    std::vector<double> eps_needed;
    for (double d : delta_grid()) {
        double w = worst_growth(d);
        eps_needed.push_back(w);
        grid_rows.push_back({{"delta", d}, {"eps_needed", w}});
    }
    rep.details["grid"] = grid_rows;

    nlohmann::json table = nlohmann::json::array();
    bool any_eps_positive = false, all_ok = true, any_zero = false;
    for (double eps : eps_list) {
        if (eps <= 0.0) {
            any_zero = true;
            table.push_back({{"eps", eps}, {"delta", 0.0}, {"resolved", false}});
            continue;
        }
        any_eps_positive = true;
        double best = 0.0;
        for (std::size_t i = 0; i < eps_needed.size(); ++i)
            if (eps_needed[i] <= eps) {
                best = delta_grid()[i];
                break;
            }
        if (best == 0.0) all_ok = false;
        table.push_back({{"eps", eps}, {"delta", best}, {"resolved", best > 0.0}});
    }
    rep.details["eps_table"] = table;
    if (!any_eps_positive)
        rep.verdict = AuditVerdict::Inconclusive;
    else if (!all_ok)
        rep.verdict = AuditVerdict::Fail;
    else
        rep.verdict = AuditVerdict::Pass;
    if (any_zero)
        rep.details["note"] = "eps = 0 cannot be certified by a finite computation";
    return rep;
}

} // namespace

AuditReport audit_i1(const GroupSpec& gs, const NormSpec& norm,
                     const std::vector<double>& eps_list,
                     const std::vector<double>& T_grid, int angular_nodes) {
    SkewVolumeFn vol = skew_volume_model(gs, norm, angular_nodes);
    RealMatrix id = RealMatrix::identity(gs.rep_dim);
    std::vector<double> base;
    for (double T : T_grid) base.push_back(vol(id, id, T));
    auto worst = [&](double delta) {
        double w = 0.0;
        for (std::size_t i = 0; i < T_grid.size(); ++i) {
            if (base[i] <= 0.0) continue;
            w = std::max(w, vol(id, id, (1.0 + delta) * T_grid[i]) / base[i] - 1.0);
        }
        return w;
    };
    AuditReport rep = continuity_audit("i1", worst, eps_list);
    rep.details["group"] = gs.name();
    rep.details["norm"] = norm_name(norm);
    rep.details["T_grid"] = T_grid;
    return rep;
}

AuditReport audit_d1(const SkewVolumeFn& vol,
                     const std::vector<std::pair<RealMatrix, RealMatrix>>& pairs,
                     const std::vector<double>& eps_list,
                     const std::vector<double>& T_grid) {
    struct Worst {
        double ratio = 0.0;
        std::size_t pair_idx = 0;
        double T = 0.0;
    };
    std::vector<std::vector<double>> base(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p)
        for (double T : T_grid) base[p].push_back(vol(pairs[p].first, pairs[p].second, T));
    Worst last;
    auto worst = [&](double delta) {
        Worst w;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            for (std::size_t i = 0; i < T_grid.size(); ++i) {
                if (base[p][i] <= 0.0) continue;
                double r =
                    vol(pairs[p].first, pairs[p].second, (1.0 + delta) * T_grid[i]) /
                        base[p][i] -
                    1.0;
                if (r > w.ratio) w = {r, p, T_grid[i]};
            }
        last = w;
        return w.ratio;
    };
    AuditReport rep = continuity_audit("d1", worst, eps_list);
    rep.details["pairs"] = pairs.size();
    rep.details["T_grid"] = T_grid;
    if (rep.verdict == AuditVerdict::Fail) {
        const auto& [g1, g2] = pairs[last.pair_idx];
        rep.details["witness"] = {{"g1", matrix_json(g1)},
                                  {"g2", matrix_json(g2)},
                                  {"T", last.T},
                                  {"excess", last.ratio}};
    }
    return rep;
}

AuditReport audit_i2(const LatticeSpec& lattice, const GroupSpec& gs,
                     const NormSpec& norm, const std::vector<double>& T_grid,
                     double flat_tol, long budget, int angular_nodes) {
    AuditReport rep;
    rep.condition = "i2";
    if (lattice.dim != gs.rep_dim) throw DimMismatch("lattice and representation dimensions differ");
    SkewVolumeFn vol = skew_volume_model(gs, norm, angular_nodes);
    RealMatrix id = RealMatrix::identity(gs.rep_dim);

    nlohmann::json rows = nlohmann::json::array();
    std::vector<double> consts;
    for (double T : T_grid) {
        long n = count_ball(lattice, norm, T, budget);
        double v = vol(id, id, T);
        if (v <= 0.0) throw Error("vanishing ball volume on the audit grid");
        double c = static_cast<double>(n) / v;
        consts.push_back(c);
        rows.push_back({{"T", T}, {"count", n}, {"volume", v}, {"ratio", c}});
    }
    rep.details["table"] = rows;
    rep.details["group"] = gs.name();
    rep.details["norm"] = norm_name(norm);

    std::size_t n = consts.size();
    std::size_t tail = std::max<std::size_t>(2, n / 2);
    tail = std::min(tail, n);
    double lo = consts[n - tail], hi = lo;
    for (std::size_t i = n - tail; i < n; ++i) {
        lo = std::min(lo, consts[i]);
        hi = std::max(hi, consts[i]);
    }
    double mid = 0.5 * (lo + hi);
    double spread = mid > 0.0 ? (hi - lo) / mid : 1.0;
    rep.details["tail_spread"] = spread;
    if (spread <= flat_tol) {
        rep.verdict = AuditVerdict::PassWithConstant;
        rep.details["constant"] = consts.back();
        rep.details["covolume_estimate"] = 1.0 / consts.back();
    } else if (spread > 3.0 * flat_tol &&
               (consts.back() > consts.front() * (1.0 + flat_tol) ||
                consts.back() < consts.front() / (1.0 + flat_tol))) {
        rep.verdict = AuditVerdict::Fail;
        rep.details["witness"] = {{"first_ratio", consts.front()}, {"last_ratio", consts.back()}};
    } else {
        rep.verdict = AuditVerdict::Inconclusive;
    }
    return rep;
}

AuditReport audit_d2(const SkewVolumeFn& vol, const RealMatrix& g1,
                     const RealMatrix& g2, const std::vector<double>& schedule,
                     double osc_tol) {
    AuditReport rep;
    rep.condition = "d2";
    if (schedule.size() < 4) throw Error("d2 audit needs a schedule of length >= 4");
    RealMatrix id = RealMatrix::identity(g1.rows());

    nlohmann::json rows = nlohmann::json::array();
    std::vector<double> ratios;
    for (double T : schedule) {
        double denom = vol(id, id, T);
        if (denom <= 0.0) throw Error("plain ball volume vanishes on the schedule");
        double r = vol(g1, g2, T) / denom;
        ratios.push_back(r);
        rows.push_back({{"T", T}, {"ratio", r}});
    }
    rep.details["trace"] = rows;

    std::size_t n = ratios.size(), tail = n / 2;
    double lo = ratios[n - tail], hi = lo;
    for (std::size_t i = n - tail; i < n; ++i) {
        lo = std::min(lo, ratios[i]);
        hi = std::max(hi, ratios[i]);
    }
    double mid = 0.5 * (lo + hi);
    double osc = mid > 0.0 ? (hi - lo) / mid : 0.0;
    rep.details["band"] = {lo, hi};
    rep.details["oscillation"] = osc;
    if (osc > osc_tol) {
        rep.verdict = AuditVerdict::Fail;
        rep.details["witness"] = {{"g1", matrix_json(g1)},
                                  {"g2", matrix_json(g2)},
                                  {"schedule", schedule},
                                  {"band", {lo, hi}}};
    } else {
        rep.verdict = AuditVerdict::Pass;
        rep.details["alpha"] = ratios.back();
    }
    return rep;
}

} // namespace orbitlab
