#include "divbound/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "divbound/error.hpp"

namespace divbound::numerics {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double tolerance(double abs_tol, double rel_tol, double value) {
    return std::max(abs_tol, rel_tol * std::abs(value));
}

// Implicit QL with Wilkinson shifts; only the first row of the eigenvector
// matrix is accumulated.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 100) throw AccuracyError("Golub-Welsch: QL iteration did not converge", kInf);
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                bool deflated = false;
                for (; i >= l; --i) {
                    const double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    const double zf = z[i + 1];
                    z[i + 1] = s * z[i] + c * zf;
                    z[i] = c * z[i] - s * zf;
                }
                if (deflated) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

// -log sum_k p_k(x)^2 for the orthonormal recurrence, with rescaling.
double log_christoffel(double x, std::span<const double> diag, std::span<const double> off) {
    const std::size_t n = diag.size();
    double log_scale = 0.0;
    double prev = 0.0;
    double cur = 1.0;
    double sum = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double next = ((x - diag[k]) * cur - (k ? off[k - 1] : 0.0) * prev) / off[k];
        prev = cur;
        cur = next;
        sum += cur * cur;
        if (sum > 1e200) {
            const double s = 1e-100;
            prev *= s;
            cur *= s;
            sum *= s * s;
            log_scale += 2.0 * std::log(1e100);
        }
    }
    return -(std::log(sum) + log_scale);
}

void check_finite_value(double v, double x, const char* what) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << what << " is not finite at x = " << x;
        throw EvaluationError(os.str());
    }
}

}  // namespace

int default_node_count() {
    if (const char* env = std::getenv("DIVBOUND_NODES")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= kMinNodes && v <= kMaxNodes) return static_cast<int>(v);
    }
    return kDefaultNodes;
}

namespace {
std::atomic<double> g_abs_tol{1e-10};
std::atomic<double> g_rel_tol{1e-10};
}  // namespace

Tolerances default_tolerances() { return {g_abs_tol.load(), g_rel_tol.load()}; }

void set_default_tolerances(Tolerances t) {
    if (!(t.abs > 0.0) || !(t.rel > 0.0)) throw DomainError("quadrature tolerances must be positive");
    g_abs_tol = t.abs;
    g_rel_tol = t.rel;
}

QuadratureScheme QuadratureScheme::gamma(double alpha, int nodes) {
    QuadratureScheme s;
    s.kind = WeightKind::Gamma;
    s.alpha = alpha;
    s.node_count = nodes;
    s.validate();
    return s;
}

QuadratureScheme QuadratureScheme::gaussian(int nodes) {
    QuadratureScheme s;
    s.kind = WeightKind::Gaussian;
    s.node_count = nodes;
    s.validate();
    return s;
}

void QuadratureScheme::validate() const {
    if (node_count < 1) throw DomainError("quadrature node count must be positive");
    if (kind == WeightKind::Gamma && !(alpha > -1.0 && std::isfinite(alpha)))
        throw DomainError("Gamma weight requires alpha > -1");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw DomainError("quadrature tolerances must be positive");
    if (max_depth < 1) throw DomainError("adaptive depth limit must be positive");
}

QuadratureScheme QuadratureScheme::with_nodes(int nodes) const {
    QuadratureScheme s = *this;
    s.node_count = nodes;
    s.validate();
    return s;
}

double QuadratureScheme::log_weight(double x) const {
    if (kind == WeightKind::Gaussian) return -0.5 * x * x - kLogSqrt2Pi;
    if (!(x > 0.0)) return -kInf;
    return alpha * std::log(x) - x - std::lgamma(alpha + 1.0);
}

std::string QuadratureScheme::describe() const {
    std::ostringstream os;
    if (kind == WeightKind::Gamma) os << "gamma(alpha=" << alpha << ")";
    else os << "gaussian";
    os << " nodes=" << node_count;
    return os.str();
}

GaussRule golub_welsch(std::span<const double> diag, std::span<const double> offdiag) {
    const std::size_t n = diag.size();
    if (n == 0 || offdiag.size() + 1 != n) throw DomainError("golub_welsch: inconsistent Jacobi matrix");
    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(n, 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    tridiagonal_ql(d, e, z);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    GaussRule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    rule.log_weights.reserve(n);
    for (std::size_t i : order) {
        const double x = d[i];
        const double lw = log_christoffel(x, diag, offdiag);
        rule.nodes.push_back(x);
        rule.log_weights.push_back(lw);
        rule.weights.push_back(std::exp(lw));
    }
    // Eigenvalue error leaks into the Christoffel values at the 1e-11 level for
    // large n; pin the total mass to one.
    long double total = 0.0L;
    for (double w : rule.weights) total += w;
    const double log_total = std::log(static_cast<double>(total));
    for (std::size_t i = 0; i < n; ++i) {
        rule.log_weights[i] -= log_total;
        rule.weights[i] = std::exp(rule.log_weights[i]);
    }
    return rule;
}

std::shared_ptr<const GaussRule> gauss_rule(WeightKind kind, double alpha, int nodes) {
    if (nodes < 1) throw DomainError("quadrature node count must be positive");
    using Key = std::tuple<int, double, int>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const GaussRule>> cache;
    const Key key{static_cast<int>(kind), kind == WeightKind::Gamma ? alpha : 0.0, nodes};
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    std::vector<double> diag(static_cast<std::size_t>(nodes));
    std::vector<double> off(static_cast<std::size_t>(nodes) - 1);
    for (int k = 0; k < nodes; ++k) {
        if (kind == WeightKind::Gamma) {
            diag[k] = 2.0 * k + alpha + 1.0;
            if (k + 1 < nodes) off[k] = std::sqrt((k + 1.0) * (k + 1.0 + alpha));
        } else {
            diag[k] = 0.0;
            if (k + 1 < nodes) off[k] = std::sqrt(k + 1.0);
        }
    }
    auto rule = std::make_shared<const GaussRule>(golub_welsch(diag, off));
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(rule)).first->second;
}

double gauss_sum(const Function& g, const Function& h, const GaussRule& rule) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        double arg = rule.log_weights[i];
        if (h) {
            const double hv = h(x);
            if (std::isnan(hv) || hv == kInf) check_finite_value(hv, x, "exponent");
            arg += hv;
        }
        const double e = std::exp(arg);
        if (e == 0.0) continue;
        const double gv = g(x);
        check_finite_value(gv, x, "integrand");
        acc += gv * e;
    }
    return acc;
}

Integral integrate_adaptive(const Function& g, const Function& h, const QuadratureScheme& scheme) {
    scheme.validate();
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double boost_tol = std::max(scheme.rel_tol * 0.1, 1e-15);
    const unsigned depth = static_cast<unsigned>(scheme.max_depth);

    auto combine = [&](double x, double log_extra) {
        double arg = log_extra;
        if (h) {
            const double hv = h(x);
            if (std::isnan(hv) || hv == kInf) check_finite_value(hv, x, "exponent");
            arg += hv;
        }
        const double e = std::exp(arg);
        if (e == 0.0) return 0.0;
        const double gv = g(x);
        check_finite_value(gv, x, "integrand");
        return gv * e;
    };

    Integral out;
    out.adaptive = true;
    if (scheme.kind == WeightKind::Gaussian) {
        double err = 0.0;
        out.value = GK::integrate([&](double x) { return combine(x, -0.5 * x * x - kLogSqrt2Pi); }, -kInf, kInf,
                                  depth, boost_tol, &err);
        out.error = err;
    } else {
        const double a1 = scheme.alpha + 1.0;
        const double lg1 = std::lgamma(a1);
        const double lg2 = std::lgamma(a1 + 1.0);
        double err_a = 0.0;
        double err_b = 0.0;
        // x = s^{1/(a+1)} on [0, 1] absorbs the x^a factor; tanh-sinh copes
        // with whatever endpoint singularity is left in g.
        boost::math::quadrature::tanh_sinh<double> ts(depth);
        const double part_a = ts.integrate(
            [&](double s) {
                const double x = std::pow(s, 1.0 / a1);
                // x underflows only where the mass is below 1e-300.
                if (x == 0.0) return 0.0;
                return combine(x, -x - lg2);
            },
            0.0, 1.0, boost_tol, &err_a);
        const double part_b = GK::integrate(
            [&](double x) { return combine(x, scheme.alpha * std::log(x) - x - lg1); }, 1.0, kInf, depth,
            boost_tol, &err_b);
        out.value = part_a + part_b;
        out.error = err_a + err_b;
    }
    if (!std::isfinite(out.value)) throw EvaluationError("adaptive quadrature produced a non-finite value");
    return out;
}

Integral integrate_weighted_exp(const Function& g, const Function& h, const QuadratureScheme& scheme) {
    scheme.validate();
    const auto coarse = gauss_rule(scheme.kind, scheme.alpha, scheme.node_count);
    const auto fine = gauss_rule(scheme.kind, scheme.alpha, 2 * scheme.node_count);
    const double i_coarse = gauss_sum(g, h, *coarse);
    const double i_fine = gauss_sum(g, h, *fine);
    const double diff = std::abs(i_fine - i_coarse);
    if (diff <= tolerance(scheme.abs_tol, scheme.rel_tol, i_fine)) return {i_fine, diff, false};

    Integral ad = integrate_adaptive(g, h, scheme);
    if (ad.error > tolerance(scheme.abs_tol, scheme.rel_tol, ad.value)) {
        std::ostringstream os;
        os << "quadrature tolerance not met for " << scheme.describe() << ": estimated error " << ad.error;
        throw AccuracyError(os.str(), ad.error);
    }
    return ad;
}

Integral integrate_weighted(const Function& f, const QuadratureScheme& scheme) {
    return integrate_weighted_exp(f, Function{}, scheme);
}

Integral integrate_interval(const Function& f, double a, double b, double abs_tol, double rel_tol, int max_depth) {
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double err = 0.0;
    auto checked = [&](double x) {
        const double v = f(x);
        check_finite_value(v, x, "integrand");
        return v;
    };
    const double v = GK::integrate(checked, a, b, static_cast<unsigned>(max_depth), std::max(rel_tol * 0.1, 1e-15),
                                   &err);
    if (err > tolerance(abs_tol, rel_tol, v)) {
        std::ostringstream os;
        os << "interval quadrature tolerance not met: estimated error " << err;
        throw AccuracyError(os.str(), err);
    }
    return {v, err, true};
}

double find_root(const Function& g, double lo, double hi, double tol) {
    if (!(lo < hi)) throw BracketError("find_root: empty bracket");
    double glo = g(lo);
    double ghi = g(hi);
    check_finite_value(glo, lo, "root function");
    check_finite_value(ghi, hi, "root function");
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo < 0.0) == (ghi < 0.0)) {
        std::ostringstream os;
        os << "find_root: no sign change on [" << lo << ", " << hi << "]";
        throw BracketError(os.str());
    }
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= tol && std::min(std::abs(glo), std::abs(ghi)) <= tol) break;
        const double gm = g(mid);
        check_finite_value(gm, mid, "root function");
        if (gm == 0.0) return mid;
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
            ghi = gm;
        }
    }
    return std::abs(glo) <= std::abs(ghi) ? lo : hi;
}

}  // namespace divbound::numerics
