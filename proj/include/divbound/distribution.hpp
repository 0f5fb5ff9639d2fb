#pragma once

#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "divbound/quadrature.hpp"

namespace divbound {

namespace tilt {
class TiltedFamily;
}

// Probability mass function on integers.
struct DiscretePmf {
    std::vector<long> support;  // strictly increasing
    std::vector<double> probs;
};

// Density sampled on a grid; integrals use the trapezoid rule.
struct GridDensity {
    std::vector<double> nodes;  // strictly increasing
    std::vector<double> values;
};

// X = scale * Y with Y drawn from a tilted family at natural parameter beta.
struct TiltedMember {
    std::shared_ptr<const tilt::TiltedFamily> family;
    double beta = 0.0;
    double scale = 1.0;
};

class DistributionSpec {
public:
    using Variant = std::variant<DiscretePmf, GridDensity, TiltedMember>;

    // Validating constructors. pmf probabilities must sum to one within
    // pmf_tol; grid densities must integrate to one within grid_tol.
    static DistributionSpec pmf(std::vector<long> support, std::vector<double> probs, double pmf_tol = 1e-12);
    static DistributionSpec grid(std::vector<double> nodes, std::vector<double> values, double grid_tol = 1e-8);
    static DistributionSpec tilted(std::shared_ptr<const tilt::TiltedFamily> family, double beta, double scale = 1.0);

    const Variant& variant() const noexcept { return v_; }
    bool is_discrete() const noexcept { return std::holds_alternative<DiscretePmf>(v_); }

    // Smallest and largest points carrying positive mass (may be infinite).
    double support_lo() const;
    double support_hi() const;

    double expect(const numerics::Function& f) const;
    double mean() const;
    double variance() const;

    // Same law for c * X (c > 0).
    DistributionSpec scaled(double c) const;

private:
    explicit DistributionSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

// Trapezoid integral of sampled values over nodes.
double trapezoid(const std::vector<double>& nodes, const std::vector<double>& values);

// Reference law given by its log-density (continuous) or log-pmf on the
// integers (discrete). Outside [support_lo, support_hi] the reference has no
// mass.
struct Reference {
    enum class Kind { Continuous, Discrete };
    Kind kind = Kind::Continuous;
    numerics::Function log_density;
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();
    std::string name;
};

inline constexpr double kInfiniteDivergence = std::numeric_limits<double>::infinity();

// D(X || reference). Returns kInfiniteDivergence when X is not absolutely
// continuous with respect to the reference.
double divergence_vs_density(const DistributionSpec& x, const Reference& reference);

}  // namespace divbound
