#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orbitlab/matrix.hpp"
#include "orbitlab/rational.hpp"

namespace orbitlab {

// Everything here lives in "s-coordinates": a fixed rational coordinate system
// on the Cartan subspace a (rank-many coordinates). Roots and weights are
// rational covectors in these coordinates, so pairings like lambda_1(beta_k)
// are exact.

struct Root {
    std::vector<Rational> alpha; // covector coefficients
    int mult = 1;
};

struct Weight {
    std::vector<Rational> lambda;
    int mult = 1;
};

enum class GroupFamily { SLn, SOpq, SL2xSL2Tensor };

struct GroupSpec {
    GroupFamily family;
    int p = 0, q = 0;   // SOpq
    int n = 0;          // SLn
    int ell = 0;        // SL2xSL2Tensor: second tensor factor dimension
    int rank = 0;
    int rep_dim = 0;

    std::vector<Root> positive_roots;
    std::vector<Root> simple_roots;
    std::vector<Weight> weights;       // distinct restricted weights of Psi
    std::vector<int> basis_weight;     // rep basis index -> index into weights
    std::vector<Rational> rho2;        // 2*rho = sum over Phi+ of m_alpha alpha

    // Dual basis to the simple roots and its growth-normalized rescaling
    // beta_i = beta~_i / (2 rho(beta~_i)), ordered so that the highest weight
    // is smallest on beta_0 (the slow direction comes first).
    std::vector<std::vector<Rational>> beta_tilde;
    std::vector<std::vector<Rational>> beta;

    int highest_weight_index = 0;

    bool simple_group = false;  // simple as a Lie group (drives balancedness)
    bool irreducible = true;    // Psi irreducible

    std::string name() const;
};

GroupSpec make_sl(int n);                    // SL(n,R), standard representation
GroupSpec make_sopq(int p, int q);           // SO(p,q), 1 <= p <= q, standard rep
GroupSpec make_sl2xsl2_tensor(int ell);      // SL2 x SL2 on R^2 (x) R^ell, ell >= 2

// --- exact pairings -------------------------------------------------------

Rational pair(const std::vector<Rational>& covector, const std::vector<Rational>& vec);

// lambda_1(beta_i) for all i, exact.
std::vector<Rational> growth_rates(const GroupSpec& gs);

enum class EllClass { Zero, One, Unknown };

struct GrowthExponents {
    Rational m1;        // min_i lambda_1(beta_i)
    Rational m;         // 1/m1: the volume growth power lambda(H_T) ~ C T^m
    bool has_m2 = false;
    Rational m2;        // min over the remaining directions (rank >= 2)
    bool condition_g = false; // strict gap: m1 < m2 (vacuous in rank 1)
    EllClass ell = EllClass::Unknown; // log power: T^m (log T)^ell
};

GrowthExponents growth_exponents(const GroupSpec& gs);

// Weight indices k with lambda_k(beta_0) = m1 (the slow set J).
std::vector<int> slow_weight_set(const GroupSpec& gs);

// --- numeric evaluation ----------------------------------------------------

double eval_covector(const std::vector<Rational>& cov, const std::vector<double>& s);

// s-coordinates of Y = sum_i t_i beta_i (t in rescaled-basis coordinates).
std::vector<double> s_from_beta_coords(const GroupSpec& gs, const std::vector<double>& t);

// Cartan radial density xi(Y) = prod_{alpha in Phi+} sinh(alpha(Y))^{m_alpha},
// Y given in rescaled-basis coordinates t.
double xi(const GroupSpec& gs, const std::vector<double>& t);

// Prop-style limit profile: xi(t1 beta_0 + tau) ~ e^{t1} xi_hat(tau), where
// tau = (t_2, ..., t_r) spans the remaining rescaled directions.
double xi_hat(const GroupSpec& gs, const std::vector<double>& tau);

// Limit matrix E_tau: diagonal, e^{lambda_k(tau)} on rep basis vectors whose
// weight lies in the slow set, 0 elsewhere.
RealMatrix e_tau(const GroupSpec& gs, const std::vector<double>& tau);

// Psi(exp Y) as a diagonal matrix, Y in rescaled-basis coordinates.
RealMatrix rep_exp(const GroupSpec& gs, const std::vector<double>& t);

// Psi(k) for k in the maximal compact, parametrized by angles:
// SL(2): one angle; SL2xSL2Tensor: two angles. Throws for other families.
RealMatrix rep_compact(const GroupSpec& gs, const std::vector<double>& angles);
int compact_angle_count(const GroupSpec& gs);

// SO(3) element from a (not necessarily normalized) quaternion; MC sampling
// of K for SL(3,R).
RealMatrix so3_from_quaternion(double q0, double q1, double q2, double q3);

// Symmetric-power representation Sym^{ell-1} of a 2x2 matrix (dimension ell).
RealMatrix sym_power(const RealMatrix& g, int ell);

// --- balancedness ----------------------------------------------------------

enum class BalancedVerdict { Balanced, NotBalanced, Unknown };

struct BalancedResult {
    BalancedVerdict verdict;
    std::string reason;
};

BalancedResult balanced_verdict(const GroupSpec& gs);

nlohmann::json to_json(const GroupSpec& gs);

} // namespace orbitlab
