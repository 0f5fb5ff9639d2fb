#include "divbound/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "divbound/error.hpp"
#include "divbound/tilt.hpp"

namespace divbound {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// p ln(p/q) with 0 ln 0 = 0 and p ln(p/0) = +inf for p > 0.
double entropy_term(double p, double log_q) {
    if (p <= 0.0) return 0.0;
    if (log_q == -kInf) return kInf;
    return p * (std::log(p) - log_q);
}

}  // namespace

double trapezoid(const std::vector<double>& nodes, const std::vector<double>& values) {
    double acc = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i) acc += 0.5 * (nodes[i] - nodes[i - 1]) * (values[i] + values[i - 1]);
    return acc;
}

DistributionSpec DistributionSpec::pmf(std::vector<long> support, std::vector<double> probs, double pmf_tol) {
    if (support.empty() || support.size() != probs.size()) throw DomainError("pmf: support and probabilities differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) throw DomainError("pmf: probabilities must be non-negative");
        if (i && support[i] <= support[i - 1]) throw DomainError("pmf: support must be strictly increasing");
        total += probs[i];
    }
    if (std::abs(total - 1.0) > pmf_tol) {
        std::ostringstream os;
        os << "pmf: probabilities sum to " << total << ", not 1";
        throw DomainError(os.str());
    }
    return DistributionSpec(DiscretePmf{std::move(support), std::move(probs)});
}

DistributionSpec DistributionSpec::grid(std::vector<double> nodes, std::vector<double> values, double grid_tol) {
    if (nodes.size() < 2 || nodes.size() != values.size()) throw DomainError("grid: need at least two nodes with values");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!std::isfinite(nodes[i])) throw DomainError("grid: nodes must be finite");
        if (!(values[i] >= 0.0) || !std::isfinite(values[i])) throw DomainError("grid: density values must be non-negative");
        if (i && nodes[i] <= nodes[i - 1]) throw DomainError("grid: nodes must be strictly increasing");
    }
    const double total = trapezoid(nodes, values);
    if (std::abs(total - 1.0) > grid_tol) {
        std::ostringstream os;
        os.precision(12);
        os << "grid: density integrates to " << total << ", not 1";
        throw DomainError(os.str());
    }
    return DistributionSpec(GridDensity{std::move(nodes), std::move(values)});
}

DistributionSpec DistributionSpec::tilted(std::shared_ptr<const tilt::TiltedFamily> family, double beta, double scale) {
    if (!family) throw DomainError("tilted member needs a family");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("tilted member scale must be positive");
    if (!family->beta_domain().contains(beta)) throw DomainError("tilted member: beta outside the natural domain");
    return DistributionSpec(TiltedMember{std::move(family), beta, scale});
}

double DistributionSpec::support_lo() const {
    return std::visit(overloaded{
                          [](const DiscretePmf& p) {
                              for (std::size_t i = 0; i < p.probs.size(); ++i)
                                  if (p.probs[i] > 0.0) return static_cast<double>(p.support[i]);
                              return kInf;
                          },
                          [](const GridDensity& g) {
                              for (std::size_t i = 0; i < g.values.size(); ++i)
                                  if (g.values[i] > 0.0) return i ? g.nodes[i - 1] : g.nodes[i];
                              return kInf;
                          },
                          [](const TiltedMember& t) { return t.scale * t.family->base().support_lo(); },
                      },
                      v_);
}

double DistributionSpec::support_hi() const {
    return std::visit(overloaded{
                          [](const DiscretePmf& p) {
                              for (std::size_t i = p.probs.size(); i-- > 0;)
                                  if (p.probs[i] > 0.0) return static_cast<double>(p.support[i]);
                              return -kInf;
                          },
                          [](const GridDensity& g) {
                              for (std::size_t i = g.values.size(); i-- > 0;)
                                  if (g.values[i] > 0.0) return i + 1 < g.nodes.size() ? g.nodes[i + 1] : g.nodes[i];
                              return -kInf;
                          },
                          [](const TiltedMember&) { return kInf; },
                      },
                      v_);
}

double DistributionSpec::expect(const numerics::Function& f) const {
    return std::visit(overloaded{
                          [&](const DiscretePmf& p) {
                              double acc = 0.0;
                              for (std::size_t i = 0; i < p.probs.size(); ++i)
                                  if (p.probs[i] > 0.0) acc += p.probs[i] * f(static_cast<double>(p.support[i]));
                              return acc;
                          },
                          [&](const GridDensity& g) {
                              std::vector<double> fv(g.nodes.size());
                              for (std::size_t i = 0; i < fv.size(); ++i)
                                  fv[i] = g.values[i] > 0.0 ? g.values[i] * f(g.nodes[i]) : 0.0;
                              return trapezoid(g.nodes, fv);
                          },
                          [&](const TiltedMember& t) {
                              const double c = t.scale;
                              return t.family->expect(t.beta, [&](double y) { return f(c * y); });
                          },
                      },
                      v_);
}

double DistributionSpec::mean() const {
    return expect([](double x) { return x; });
}

double DistributionSpec::variance() const {
    const double m = mean();
    return expect([m](double x) { return (x - m) * (x - m); });
}

DistributionSpec DistributionSpec::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scale factor must be positive");
    return std::visit(overloaded{
                          [&](const DiscretePmf&) -> DistributionSpec {
                              throw DomainError("a pmf on the integers cannot be rescaled");
                          },
                          [&](const GridDensity& g) {
                              GridDensity s = g;
                              for (auto& x : s.nodes) x *= c;
                              for (auto& v : s.values) v /= c;
                              return DistributionSpec(std::move(s));
                          },
                          [&](const TiltedMember& t) {
                              TiltedMember s = t;
                              s.scale *= c;
                              return DistributionSpec(std::move(s));
                          },
                      },
                      v_);
}

double divergence_vs_density(const DistributionSpec& x, const Reference& ref) {
    if (!ref.log_density) throw DomainError("reference has no density");
    const bool ref_discrete = ref.kind == Reference::Kind::Discrete;
    return std::visit(
        overloaded{
            [&](const DiscretePmf& p) {
                if (!ref_discrete) return kInf;  // atoms against a density
                double acc = 0.0;
                for (std::size_t i = 0; i < p.probs.size(); ++i) {
                    if (p.probs[i] <= 0.0) continue;
                    const double k = static_cast<double>(p.support[i]);
                    const double lq = (k < ref.support_lo || k > ref.support_hi) ? -kInf : ref.log_density(k);
                    acc += entropy_term(p.probs[i], lq);
                    if (acc == kInf) return kInf;
                }
                return std::max(acc, 0.0);
            },
            [&](const GridDensity& g) {
                if (ref_discrete) return kInf;
                std::vector<double> terms(g.nodes.size());
                for (std::size_t i = 0; i < terms.size(); ++i) {
                    const double xi = g.nodes[i];
                    const double lq = (xi < ref.support_lo || xi > ref.support_hi) ? -kInf : ref.log_density(xi);
                    terms[i] = entropy_term(g.values[i], lq);
                    if (terms[i] == kInf) return kInf;
                }
                return trapezoid(g.nodes, terms);
            },
            [&](const TiltedMember& t) {
                if (ref_discrete) return kInf;
                const auto& fam = *t.family;
                const double c = t.scale;
                const double lz = fam.log_partition(t.beta);
                const double log_c = std::log(c);
                if (c * fam.base().support_lo() < ref.support_lo) return kInf;
                // E_Y[ln p_X(cY) - ln r(cY)], p_X(x) = q_b(x/c)/c.
                return fam.expect(t.beta, [&](double y) {
                    const double lp = t.beta * fam.statistic()(y) - lz + fam.base().log_density(y) - log_c;
                    const double lr = ref.log_density(c * y);
                    if (lr == -kInf) return kInf;
                    return lp - lr;
                });
            },
        },
        x.variant());
}

}  // namespace divbound
