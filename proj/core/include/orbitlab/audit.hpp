#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbitlab/lattice.hpp"
#include "orbitlab/norms.hpp"
#include "orbitlab/rootsys.hpp"
#include "orbitlab/volume.hpp"

namespace orbitlab {

// Empirical auditors for the regularity hypotheses behind the counting and
// equidistribution statements. Each returns a verdict plus a JSON blob with
// the full tables and, on Fail, a replayable witness.

enum class AuditVerdict { Pass, PassWithConstant, Fail, Inconclusive };

std::string verdict_name(AuditVerdict v);

struct AuditReport {
    std::string condition;
    AuditVerdict verdict = AuditVerdict::Inconclusive;
    nlohmann::json details;
};

// Volume law of a two-sided family of skew balls {h : D(g1 h g2) < T}.
using SkewVolumeFn =
    std::function<double(const RealMatrix& g1, const RealMatrix& g2, double T)>;

// Generic model through the Cartan integral (quadrature for one-angle K,
// Monte Carlo otherwise).
SkewVolumeFn skew_volume_model(const GroupSpec& gs, const NormSpec& norm,
                               int angular_nodes = 16);
// The spiral one-parameter subgroup of SL(3,R) with its adapted norm; g1, g2
// must be planar block rotations.
SkewVolumeFn spiral_volume_model(double c);

// Upper continuity of the distance function on SL(2,R): for each eps, the
// largest delta with D(g exp(delta X)) <= (1 + eps) D(g) across sampled g of
// wide dynamic range and sampled unit directions X.
AuditReport audit_uc(const NormSpec& norm, const std::vector<double>& eps_list,
                     int samples = 64, std::uint64_t seed = 1);

// Volume continuity: lambda(H_{(1+delta)T}) <= (1 + eps) lambda(H_T) on the
// grid. eps = 0 entries are reported Inconclusive (no finite computation can
// certify them).
AuditReport audit_i1(const GroupSpec& gs, const NormSpec& norm,
                     const std::vector<double>& eps_list,
                     const std::vector<double>& T_grid, int angular_nodes = 8);

// Lattice counts track ball volumes up to one multiplicative constant
// (PassWithConstant reports the constant and the implied covolume).
AuditReport audit_i2(const LatticeSpec& lattice, const GroupSpec& gs,
                     const NormSpec& norm, const std::vector<double>& T_grid,
                     double flat_tol = 0.1, long budget = kDefaultEnumBudget,
                     int angular_nodes = 16);

// Uniform volume continuity over a family of conjugating pairs.
AuditReport audit_d1(const SkewVolumeFn& vol,
                     const std::vector<std::pair<RealMatrix, RealMatrix>>& pairs,
                     const std::vector<double>& eps_list,
                     const std::vector<double>& T_grid);

// Convergence of the skew/plain volume ratio along the schedule. Oscillation
// beyond osc_tol on the tail is a Fail, reported with the limit band.
AuditReport audit_d2(const SkewVolumeFn& vol, const RealMatrix& g1,
                     const RealMatrix& g2, const std::vector<double>& schedule,
                     double osc_tol = 0.05);

} // namespace orbitlab
