#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace divbound::numerics {

using Function = std::function<double(double)>;

enum class WeightKind {
    Gamma,     // x^a e^{-x} / Gamma(a+1) on (0, inf)
    Gaussian,  // standard normal density on the real line
};

inline constexpr int kDefaultNodes = 200;
inline constexpr int kMinNodes = 16;
inline constexpr int kMaxNodes = 4096;

// Node count used when none is given: DIVBOUND_NODES if set and valid,
// otherwise kDefaultNodes.
int default_node_count();

// Error-estimate tolerances given to new schemes. Process-wide; the CLI sets
// them once from its overrides before doing any work.
struct Tolerances {
    double abs = 1e-10;
    double rel = 1e-10;
};
Tolerances default_tolerances();
void set_default_tolerances(Tolerances t);

struct QuadratureScheme {
    WeightKind kind = WeightKind::Gamma;
    double alpha = 0.0;
    int node_count = kDefaultNodes;
    int max_depth = 15;
    double abs_tol = default_tolerances().abs;
    double rel_tol = default_tolerances().rel;

    static QuadratureScheme gamma(double alpha, int nodes = default_node_count());
    static QuadratureScheme gaussian(int nodes = default_node_count());

    void validate() const;
    QuadratureScheme with_nodes(int nodes) const;
    // log of the weight density at x (-inf outside the support).
    double log_weight(double x) const;
    std::string describe() const;
};

// Nodes in increasing order and weights summing to one. log_weights are
// computed from the Christoffel function, so they stay accurate where the
// weights themselves underflow.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> log_weights;
};

// Golub-Welsch on the symmetric tridiagonal Jacobi matrix of an orthonormal
// recurrence x p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1} (p_0 = 1).
// diag has n entries, offdiag n-1 (offdiag[k] = b_{k+1}).
GaussRule golub_welsch(std::span<const double> diag, std::span<const double> offdiag);

// Cached rule for the scheme's weight; thread-safe.
std::shared_ptr<const GaussRule> gauss_rule(WeightKind kind, double alpha, int nodes);

struct Integral {
    double value = 0.0;
    double error = 0.0;     // estimated absolute error
    bool adaptive = false;  // true when the Gauss rule was not sufficient
};

// Integral of f against the scheme's probability weight.
Integral integrate_weighted(const Function& f, const QuadratureScheme& scheme);

// Integral of g(x) exp(h(x)) against the weight; exp(h) is combined with the
// log weight before exponentiation so large h at negligible weight is safe.
Integral integrate_weighted_exp(const Function& g, const Function& h, const QuadratureScheme& scheme);

// Gauss rule sum only (no error control), for refinement studies.
double gauss_sum(const Function& g, const Function& h, const GaussRule& rule);

// Adaptive Gauss-Kronrod over the weight's support, skipping the Gauss rule.
Integral integrate_adaptive(const Function& g, const Function& h, const QuadratureScheme& scheme);

// Plain adaptive integral of f over [a, b]; either end may be infinite.
Integral integrate_interval(const Function& f, double a, double b, double abs_tol = 1e-12,
                            double rel_tol = 1e-12, int max_depth = 15);

// Bisection. Requires a sign change on [lo, hi]; returns x with
// |g(x)| <= tol once the bracket is narrower than tol (or no longer
// representable).
double find_root(const Function& g, double lo, double hi, double tol);

}  // namespace divbound::numerics
