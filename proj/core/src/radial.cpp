#include "hardy/radial.hpp"

#include "hardy/parallel.hpp"
#include "hardy/quadrature.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double panel_integral(double a, double b, std::size_t order, const std::function<double(double)>& f) {
    const auto& rule = gauss_legendre_cached(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

struct Extension {
    double sum = 0.0;
    IntegralStatus status = IntegralStatus::ok;
    double reached = 0.0;
    std::size_t panels = 0;
};

// One-sided geometric extension. `total` is the integral accumulated so far.
Extension extend(double start, bool outward, double total, const RadialGridConfig& cfg,
                 const std::function<double(double)>& f) {
    Extension ext;
    ext.reached = start;
    double edge = start;
    double prev = 0.0;
    double prev2 = 0.0;
    int growing = 0;
    for (std::size_t k = 0; k < cfg.max_extension_panels; ++k) {
        const double a = outward ? edge : 0.5 * edge;
        const double b = outward ? 1.5 * edge : edge;
        const double c = panel_integral(a, b, cfg.order, f);
        ++ext.panels;
        edge = outward ? b : a;
        ext.reached = edge;
        if (!std::isfinite(c)) {
            ext.status = IntegralStatus::non_finite;
            return ext;
        }
        ext.sum += c;
        const double running = std::abs(total + ext.sum);
        if (std::abs(c) <= 1e-16 * running) return ext;

        growing = (k >= 1 && c > prev) ? growing + 1 : 0;
        if (growing >= 5) {
            ext.status = IntegralStatus::divergent;
            return ext;
        }
        if (k >= 2 && prev > 0.0 && prev2 > 0.0) {
            const double rho1 = prev / prev2;
            const double rho2 = c / prev;
            if (rho1 > 0.0 && rho1 < 1.0 && rho2 > 0.0 && rho2 < 1.0) {
                const double one_minus = 1.0 - rho2;
                const double uncertainty = c * std::abs(rho2 - rho1) / (one_minus * one_minus);
                if (uncertainty <= 1e-14 * running) {
                    ext.sum += c * rho2 / one_minus;
                    return ext;
                }
            }
        }
        prev2 = prev;
        prev = c;
        if (!outward && edge < 1e-300) break;
    }
    ext.status = IntegralStatus::divergent;
    return ext;
}

IntegralStatus worse(IntegralStatus a, IntegralStatus b) {
    auto rank = [](IntegralStatus s) {
        switch (s) {
            case IntegralStatus::ok: return 0;
            case IntegralStatus::divergent: return 1;
            case IntegralStatus::non_finite: return 2;
        }
        return 2;
    };
    return rank(a) >= rank(b) ? a : b;
}

}  // namespace

std::string_view to_string(IntegralStatus status) {
    switch (status) {
        case IntegralStatus::ok: return "ok";
        case IntegralStatus::divergent: return "divergent";
        case IntegralStatus::non_finite: return "non_finite";
    }
    return "unknown";
}

RadialGrid build_grid(const RadialGridConfig& config) {
    if (!(config.r_min > 0.0) || !std::isfinite(config.r_min))
        throw std::invalid_argument("radial grid: r_min must be positive");
    if (!(config.r_tail > config.r_min) || !std::isfinite(config.r_tail))
        throw std::invalid_argument("radial grid: r_tail must exceed r_min");
    if (config.panels == 0) throw std::invalid_argument("radial grid: need at least one panel");
    if (config.order == 0 || config.order > 256) throw std::invalid_argument("radial grid: order out of range");

    std::vector<double> edges;
    const double la = std::log(config.r_min);
    const double lb = std::log(config.r_tail);
    for (std::size_t i = 0; i <= config.panels; ++i)
        edges.push_back(std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(config.panels)));
    edges.front() = config.r_min;
    edges.back() = config.r_tail;
    for (double s : config.split_points) {
        if (!std::isfinite(s)) throw std::invalid_argument("radial grid: split point not finite");
        if (s > config.r_min && s < config.r_tail) edges.push_back(s);
    }
    std::sort(edges.begin(), edges.end());
    std::vector<double> unique;
    for (double e : edges)
        if (unique.empty() || e > unique.back() * (1.0 + 1e-12)) unique.push_back(e);
    unique.back() = config.r_tail;

    RadialGrid grid;
    grid.config_ = config;
    const auto& rule = gauss_legendre_cached(config.order);
    for (std::size_t i = 0; i + 1 < unique.size(); ++i) {
        const double a = unique[i];
        const double b = unique[i + 1];
        grid.panels_.push_back({a, b});
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            grid.nodes_.push_back(mid + half * rule.nodes[k]);
            grid.weights_.push_back(half * rule.weights[k]);
        }
    }
    return grid;
}

IntegralResult integrate(const RadialGrid& grid, const std::function<double(double)>& f) {
    IntegralResult res;
    const auto& cfg = grid.config();
    res.r_lo = cfg.r_min;
    res.r_hi = cfg.r_tail;
    double total = 0.0;
    const auto& nodes = grid.nodes();
    const auto& weights = grid.weights();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = f(nodes[i]);
        if (!std::isfinite(v)) {
            res.status = IntegralStatus::non_finite;
            res.value = kNaN;
            return res;
        }
        total += weights[i] * v;
    }
    if (cfg.extend_ends) {
        const Extension tail = extend(cfg.r_tail, true, total, cfg, f);
        total += tail.sum;
        res.r_hi = tail.reached;
        res.extension_panels += tail.panels;
        res.status = worse(res.status, tail.status);
        const Extension head = extend(cfg.r_min, false, total, cfg, f);
        total += head.sum;
        res.r_lo = head.reached;
        res.extension_panels += head.panels;
        res.status = worse(res.status, head.status);
    }
    switch (res.status) {
        case IntegralStatus::ok: res.value = total; break;
        case IntegralStatus::divergent: res.value = kInf; break;
        case IntegralStatus::non_finite: res.value = kNaN; break;
    }
    return res;
}

double self_test(const RadialGrid& grid) {
    const auto r = integrate(grid, [](double x) { return x * x * std::exp(-x); });
    return std::abs(r.value - 2.0);
}

// ---------------------------------------------------------------------------
// profiles

namespace {

class ZeroProfile final : public RadialProfile {
public:
    double value(double) const override { return 0.0; }
    double shifted_derivative(double, double) const override { return 0.0; }
    std::string describe() const override { return "0"; }
};

class ExprProfile final : public RadialProfile {
public:
    explicit ExprProfile(WeightExpr f) : f_(std::move(f)), df_(differentiate(f_)) {}
    double value(double r) const override { return f_(r); }
    double shifted_derivative(double r, double k) const override { return df_(r) + k * f_(r) / r; }
    std::string describe() const override { return f_.str(); }

private:
    WeightExpr f_;
    WeightExpr df_;
};

class ExpQ final : public QFunction {
public:
    double value(double r) const override { return -std::exp(-r); }
    double derivative(double r) const override { return std::exp(-r); }
    std::string describe() const override { return "0-exp(0-r)"; }
};

class PolQ final : public QFunction {
public:
    explicit PolQ(double a) : a_(a) {}
    double value(double r) const override { return std::pow(1.0 + r, 1.0 - a_) / (1.0 - a_); }
    double derivative(double r) const override { return std::pow(1.0 + r, -a_); }
    std::string describe() const override {
        std::ostringstream os;
        os << "(1+r)^(1-" << a_ << ")/(1-" << a_ << ")";
        return os.str();
    }

private:
    double a_;
};

class LogQ final : public QFunction {
public:
    double value(double r) const override { return std::log(r); }
    double derivative(double r) const override { return 1.0 / r; }
    std::string describe() const override { return "log(r)"; }
};

// Cumulative quadrature of 1/eta on a log grid, cubic Hermite in between.
class TabulatedQ final : public QFunction {
public:
    TabulatedQ(WeightExpr eta, Domain domain) : eta_(std::move(eta)) {
        constexpr std::size_t n = 4096;
        const double la = std::log(domain.r_min);
        const double lb = std::log(domain.r_max);
        r_.resize(n);
        q_.assign(n, 0.0);
        dq_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            r_[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
            dq_[i] = derivative(r_[i]);
        }
        for (std::size_t i = 1; i < n; ++i) q_[i] = q_[i - 1] + direct(r_[i - 1], r_[i]);
        const double anchor = (1.0 >= r_.front() && 1.0 <= r_.back()) ? interpolate(1.0) : q_.front();
        for (double& q : q_) q -= anchor;
    }

    double value(double r) const override {
        if (!(r > 0.0)) return std::numeric_limits<double>::quiet_NaN();
        if (r < r_.front()) return q_.front() - direct(r, r_.front());
        if (r > r_.back()) return q_.back() + direct(r_.back(), r);
        return interpolate(r);
    }
    double derivative(double r) const override { return 1.0 / eta_(r); }
    std::string describe() const override { return "tabulated integral of 1/(" + eta_.str() + ")"; }

private:
    // integral of 1/eta over [a, b], log-spaced panels
    double direct(double a, double b) const {
        const double span = std::log(b / a);
        const auto panels = static_cast<std::size_t>(std::ceil(span / 0.05)) + 1;
        double sum = 0.0;
        for (std::size_t k = 0; k < panels; ++k) {
            const double x0 = a * std::exp(span * static_cast<double>(k) / static_cast<double>(panels));
            const double x1 = a * std::exp(span * static_cast<double>(k + 1) / static_cast<double>(panels));
            sum += panel_integral(x0, x1, 10, [this](double x) { return derivative(x); });
        }
        return sum;
    }

    double interpolate(double r) const {
        auto it = std::upper_bound(r_.begin(), r_.end(), r);
        std::size_t i = it == r_.begin() ? 0 : static_cast<std::size_t>(it - r_.begin()) - 1;
        i = std::min(i, r_.size() - 2);
        const double h = r_[i + 1] - r_[i];
        const double t = (r - r_[i]) / h;
        const double t2 = t * t;
        const double t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * q_[i] + (t3 - 2 * t2 + t) * h * dq_[i] + (-2 * t3 + 3 * t2) * q_[i + 1] +
               (t3 - t2) * h * dq_[i + 1];
    }

    WeightExpr eta_;
    std::vector<double> r_;
    std::vector<double> q_;
    std::vector<double> dq_;
};

class PowerExpProfile final : public RadialProfile {
public:
    PowerExpProfile(double scale, double p, double s, QPtr q) : scale_(scale), p_(p), s_(s), q_(std::move(q)) {}
    double value(double r) const override { return scale_ * std::exp(p_ * std::log(r) + s_ * q_->value(r)); }
    double shifted_derivative(double r, double k) const override {
        // p + k is exact for the integer exponents used by the minimizers.
        return value(r) * ((p_ + k) / r + s_ * q_->derivative(r));
    }
    std::string describe() const override {
        std::ostringstream os;
        os << scale_ << "*r^" << p_ << "*exp(" << s_ << "*Q), Q = " << q_->describe();
        return os.str();
    }

private:
    double scale_;
    double p_;
    double s_;
    QPtr q_;
};

class GaussPolyProfile final : public RadialProfile {
public:
    GaussPolyProfile(int n, std::array<double, 4> c) : n_(n), c_(c) {}
    double value(double r) const override { return std::pow(r, n_) * poly(r) * std::exp(-0.5 * r * r); }
    double shifted_derivative(double r, double k) const override {
        const double dpoly = c_[1] + r * (2 * c_[2] + r * 3 * c_[3]);
        return std::pow(r, n_) * std::exp(-0.5 * r * r) * ((n_ + k) / r * poly(r) + dpoly - r * poly(r));
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "r^" << n_ << "*(" << c_[0] << " + " << c_[1] << " r + " << c_[2] << " r^2 + " << c_[3]
           << " r^3)*exp(-r^2/2)";
        return os.str();
    }

private:
    double poly(double r) const { return c_[0] + r * (c_[1] + r * (c_[2] + r * c_[3])); }
    int n_;
    std::array<double, 4> c_;
};

class LogNormalProfile final : public RadialProfile {
public:
    LogNormalProfile(double q, double width) : q_(q), width_(width) {}
    double value(double r) const override {
        const double u = std::log(r);
        return std::exp(q_ * u - u * u / (2.0 * width_));
    }
    double shifted_derivative(double r, double k) const override {
        const double u = std::log(r);
        return value(r) * ((q_ + k) - u / width_) / r;
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "r^" << q_ << "*exp(-log(r)^2/" << 2.0 * width_ << ")";
        return os.str();
    }

private:
    double q_;
    double width_;
};

class SampledProfile final : public RadialProfile {
public:
    SampledProfile(double u0, double h, std::vector<double> y) : u0_(u0), h_(h), y_(std::move(y)) {
        const std::size_t n = y_.size();
        if (n < 5) throw std::invalid_argument("sampled profile: need at least 5 samples");
        if (!(h_ > 0.0)) throw std::invalid_argument("sampled profile: step must be positive");
        dy_.resize(n);
        const double s = 12.0 * h_;
        dy_[0] = (-25 * y_[0] + 48 * y_[1] - 36 * y_[2] + 16 * y_[3] - 3 * y_[4]) / s;
        dy_[1] = (-3 * y_[0] - 10 * y_[1] + 18 * y_[2] - 6 * y_[3] + y_[4]) / s;
        for (std::size_t i = 2; i + 2 < n; ++i) dy_[i] = (y_[i - 2] - 8 * y_[i - 1] + 8 * y_[i + 1] - y_[i + 2]) / s;
        dy_[n - 2] = (3 * y_[n - 1] + 10 * y_[n - 2] - 18 * y_[n - 3] + 6 * y_[n - 4] - y_[n - 5]) / s;
        dy_[n - 1] = (25 * y_[n - 1] - 48 * y_[n - 2] + 36 * y_[n - 3] - 16 * y_[n - 4] + 3 * y_[n - 5]) / s;
    }

    double value(double r) const override { return lagrange(y_, std::log(r)); }
    double shifted_derivative(double r, double k) const override {
        const double u = std::log(r);
        return (lagrange(dy_, u) + k * lagrange(y_, u)) / r;
    }
    std::string describe() const override {
        std::ostringstream os;
        os << "sampled(" << y_.size() << " points, log r in [" << u0_ << ", "
           << u0_ + h_ * static_cast<double>(y_.size() - 1) << "])";
        return os.str();
    }

private:
    double lagrange(const std::vector<double>& v, double u) const {
        const double t = (u - u0_) / h_;
        const double last = static_cast<double>(v.size() - 1);
        if (t < 0.0 || t > last) return 0.0;
        auto i0 = static_cast<long>(std::floor(t)) - 1;
        i0 = std::clamp(i0, 0L, static_cast<long>(v.size()) - 4);
        double sum = 0.0;
        for (int a = 0; a < 4; ++a) {
            double basis = 1.0;
            for (int b = 0; b < 4; ++b)
                if (b != a) basis *= (t - static_cast<double>(i0 + b)) / static_cast<double>(a - b);
            sum += basis * v[static_cast<std::size_t>(i0 + a)];
        }
        return sum;
    }

    double u0_;
    double h_;
    std::vector<double> y_;
    std::vector<double> dy_;
};

bool is_variable(const WeightExpr& e) { return e.kind() == WeightExpr::Kind::variable; }
bool is_constant(const WeightExpr& e, double v) {
    return e.kind() == WeightExpr::Kind::constant && e.number() == v;
}

}  // namespace

ProfilePtr zero_profile() {
    static const ProfilePtr zero = std::make_shared<const ZeroProfile>();
    return zero;
}

ProfilePtr expr_profile(const WeightExpr& f) { return std::make_shared<const ExprProfile>(f); }

QPtr make_q_function(const WeightExpr& eta, Domain domain) {
    using Kind = WeightExpr::Kind;
    if (eta.kind() == Kind::exp && is_variable(eta.children()[0])) return std::make_shared<const ExpQ>();
    if (is_variable(eta)) return std::make_shared<const LogQ>();
    if (eta.kind() == Kind::pow && eta.number() != 1.0) {
        const WeightExpr base = eta.children()[0];
        if (base.kind() == Kind::add) {
            const auto ops = base.children();
            if ((is_constant(ops[0], 1.0) && is_variable(ops[1])) || (is_variable(ops[0]) && is_constant(ops[1], 1.0)))
                return std::make_shared<const PolQ>(eta.number());
        }
    }
    return std::make_shared<const TabulatedQ>(eta, domain);
}

ProfilePtr power_exp_profile(double scale, double p, double s, QPtr q) {
    return std::make_shared<const PowerExpProfile>(scale, p, s, std::move(q));
}

ProfilePtr gauss_poly_profile(int n, std::array<double, 4> coefficients) {
    return std::make_shared<const GaussPolyProfile>(n, coefficients);
}

ProfilePtr log_normal_profile(double q, double width) {
    if (!(width > 0.0)) throw std::invalid_argument("log-normal profile: width must be positive");
    return std::make_shared<const LogNormalProfile>(q, width);
}

ProfilePtr sampled_profile(double log_r_first, double log_r_step, std::vector<double> samples) {
    return std::make_shared<const SampledProfile>(log_r_first, log_r_step, std::move(samples));
}

// ---------------------------------------------------------------------------
// fields

SpinorField::SpinorField(std::vector<RadialProfilePair> channels) {
    for (auto& c : channels) add(std::move(c));
}

void SpinorField::add(RadialProfilePair pair) {
    for (const auto& c : channels_)
        if (c.channel == pair.channel) throw std::invalid_argument("spinor field: duplicate channel");
    if (!pair.f_plus) pair.f_plus = zero_profile();
    if (!pair.f_minus) pair.f_minus = zero_profile();
    channels_.push_back(std::move(pair));
}

SpinorField SpinorField::scaled(Complex s) const {
    SpinorField out = *this;
    for (auto& c : out.channels_) {
        c.a_plus *= s;
        c.a_minus *= s;
    }
    return out;
}

Spinor4 evaluate_field(const SpinorField& field, const Vec3& x) {
    Spinor4 psi{};
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r == 0.0) return psi;
    const Vec3 dir{x[0] / r, x[1] / r, x[2] / r};
    for (const auto& c : field.channels()) {
        const Complex up = c.a_plus * (c.f_plus->value(r) / r);
        const Complex down = c.a_minus * (c.f_minus->value(r) / r);
        if (up != Complex{}) {
            const Spinor4 phi = dirac_spinor(c.channel, BasisSign::plus, dir);
            for (int k = 0; k < 4; ++k) psi[k] += up * phi[k];
        }
        if (down != Complex{}) {
            const Spinor4 phi = dirac_spinor(c.channel, BasisSign::minus, dir);
            for (int k = 0; k < 4; ++k) psi[k] += down * phi[k];
        }
    }
    return psi;
}

// ---------------------------------------------------------------------------
// functionals

namespace {

using ChannelIntegrand = std::function<double(const RadialProfilePair&, double)>;

IntegralResult sum_over_channels(const SpinorField& field, const RadialGrid& grid, const ChannelIntegrand& g) {
    const auto& chans = field.channels();
    std::vector<IntegralResult> parts(chans.size());
    parallel_for(chans.size(), [&](std::size_t i) {
        parts[i] = integrate(grid, [&](double r) { return g(chans[i], r); });
    });
    IntegralResult out;
    out.r_lo = grid.config().r_min;
    out.r_hi = grid.config().r_tail;
    for (const auto& p : parts) {
        out.status = worse(out.status, p.status);
        out.value += p.value;
        out.r_lo = std::min(out.r_lo, p.r_lo);
        out.r_hi = std::max(out.r_hi, p.r_hi);
        out.extension_panels += p.extension_panels;
        out.per_channel.push_back(p.value);
    }
    if (out.status == IntegralStatus::non_finite) out.value = kNaN;
    return out;
}

double weight_ratio(const WeightExpr& omega, const WeightExpr& eta, double r) {
    const double e = eta(r);
    return omega(r) / e / e;
}

double log_weight_ratio(const WeightExpr& omega, const WeightExpr& eta, double r) {
    return omega.log_value(r) - 2.0 * eta.log_value(r);
}

// amp2 * weight; falls back to logs where the weight overflows, and a vanishing
// amplitude contributes nothing
template <class W, class L>
double weighted(double amp2, W&& weight, L&& log_weight) {
    if (amp2 == 0.0) return 0.0;
    const double w = weight();
    if (std::isfinite(w) && w > 0.0) return amp2 * w;
    return std::exp(std::log(amp2) + log_weight());
}

}  // namespace

IntegralResult lhs_integral(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                            const RadialGrid& grid) {
    return sum_over_channels(field, grid, [&](const RadialProfilePair& c, double r) {
        const double fp = c.f_plus->value(r);
        const double fm = c.f_minus->value(r);
        return weighted(std::norm(c.a_plus) * fp * fp + std::norm(c.a_minus) * fm * fm,
                        [&] { return weight_ratio(omega, eta, r); }, [&] { return log_weight_ratio(omega, eta, r); });
    });
}

IntegralResult mid_integral(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                            const RadialGrid& grid) {
    return sum_over_channels(field, grid, [&](const RadialProfilePair& c, double r) {
        const double sp = apply_spin_orbit(c.channel, BasisSign::plus);
        const double sm = apply_spin_orbit(c.channel, BasisSign::minus);
        const double fp = sp * c.f_plus->value(r);
        const double fm = sm * c.f_minus->value(r);
        return weighted(std::norm(c.a_plus) * fp * fp + std::norm(c.a_minus) * fm * fm,
                        [&] { return weight_ratio(omega, eta, r); }, [&] { return log_weight_ratio(omega, eta, r); });
    });
}

IntegralResult rhs_integral(const SpinorField& field, const WeightExpr& omega, const RadialGrid& grid, double mass) {
    return sum_over_channels(field, grid, [&](const RadialProfilePair& c, double r) {
        const double k = c.channel.kappa();
        const Complex up = c.a_plus * c.f_plus->shifted_derivative(r, k) - mass * c.a_minus * c.f_minus->value(r);
        const Complex down = c.a_minus * c.f_minus->shifted_derivative(r, -k) - mass * c.a_plus * c.f_plus->value(r);
        return weighted(std::norm(up) + std::norm(down), [&] { return omega(r); }, [&] { return omega.log_value(r); });
    });
}

IntegralResult defect_integral(const SpinorField& field, const WeightExpr& omega, const WeightExpr& eta,
                               const RadialGrid& grid, double c_value, double mass) {
    if (!(c_value >= 0.0)) throw std::invalid_argument("defect: c must be non-negative");
    return sum_over_channels(field, grid, [&](const RadialProfilePair& c, double r) {
        const double k = c.channel.kappa();
        const double shift = k * c_value / eta(r);
        const double fp = c.f_plus->value(r);
        const double fm = c.f_minus->value(r);
        const Complex up =
            c.a_plus * (c.f_plus->shifted_derivative(r, k) - shift * fp) - mass * c.a_minus * fm;
        const Complex down =
            c.a_minus * (c.f_minus->shifted_derivative(r, -k) + shift * fm) - mass * c.a_plus * fp;
        return weighted(std::norm(up) + std::norm(down), [&] { return omega(r); }, [&] { return omega.log_value(r); });
    });
}

// ---------------------------------------------------------------------------
// minimizers

MinimizerResult solve_minimizer(const WeightExpr& eta, double c, const ChannelIndex& channel, double mass,
                                const MinimizerOptions& options) {
    const int k = channel.kappa();
    if (k != 1 && k != -1) throw std::invalid_argument("minimizers exist only in kappa = +-1 channels");
    MinimizerResult out;
    out.pair.channel = channel;
    if (mass > 0.0) {
        const NumericMinimizer num = solve_minimizer_numeric(eta, c, channel, mass, options);
        out.candidate = num.pair;
        out.q_form = "numeric";
        out.attained = num.integrable;
        out.message = num.message;
        if (out.attained) out.pair = out.candidate;
        return out;
    }
    const QPtr q = make_q_function(eta, options.domain);
    out.q_form = q->describe();
    out.candidate.channel = channel;
    // Regular component: k = -1 keeps f+ = r exp(-c Q), k = +1 keeps f- = r exp(-c Q).
    const ProfilePtr regular = power_exp_profile(1.0, 1.0, -c, q);
    if (k == -1)
        out.candidate.f_plus = regular;
    else
        out.candidate.f_minus = regular;

    const WeightExpr omega = options.omega.value_or(eta);
    const RadialGrid grid = build_grid(options.grid);
    const SpinorField single({out.candidate});
    const IntegralResult norm = lhs_integral(single, omega, eta, grid);
    const IntegralResult rhs = rhs_integral(single, omega, grid, 0.0);
    out.attained = norm.status == IntegralStatus::ok && rhs.status == IntegralStatus::ok && norm.value > 0.0;
    if (out.attained) {
        out.pair = out.candidate;
        out.message = "regular solution is normalizable";
    } else {
        std::ostringstream os;
        os << "no attainer: weighted norm " << to_string(norm.status) << ", right-hand side "
           << to_string(rhs.status);
        out.message = os.str();
    }
    return out;
}

NumericMinimizer solve_minimizer_numeric(const WeightExpr& eta, double c, const ChannelIndex& channel,
                                         double mass, const MinimizerOptions& options) {
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 2>;

    const int k = channel.kappa();
    if (k != 1 && k != -1) throw std::invalid_argument("minimizers exist only in kappa = +-1 channels");
    if (mass < 0.0) throw std::invalid_argument("mass must be non-negative");

    const double r0 = options.grid.r_min;
    const double r1 = options.grid.r_tail;
    constexpr std::size_t n = 4097;
    const double u0 = std::log(r0);
    const double h = (std::log(r1) - u0) / static_cast<double>(n - 1);
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) times[i] = std::exp(u0 + h * static_cast<double>(i));
    times.front() = r0;
    times.back() = r1;

    // (f+, f-)' = [[-g, m], [m, g]] (f+, f-),  g = k (1/r - c/eta)
    auto system = [&](const State& f, State& df, double r) {
        const double g = k * (1.0 / r - c / eta(r));
        df[0] = -g * f[0] + mass * f[1];
        df[1] = g * f[1] + mass * f[0];
    };

    // Leading behaviour at the origin: regular component r, partner m r^2 / 3.
    State state{};
    const std::size_t reg = k == -1 ? 0 : 1;
    state[reg] = r0;
    state[1 - reg] = mass * r0 * r0 / 3.0;

    std::vector<double> fp;
    std::vector<double> fm;
    struct Overflow {};
    auto observer = [&](const State& f, double) {
        if (!std::isfinite(f[0]) || !std::isfinite(f[1]) || std::abs(f[0]) > 1e250 || std::abs(f[1]) > 1e250)
            throw Overflow{};
        fp.push_back(f[0]);
        fm.push_back(f[1]);
    };

    NumericMinimizer out;
    out.pair.channel = channel;
    try {
        auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-14, 1e-12);
        ode::integrate_times(stepper, system, state, times.begin(), times.end(), 1e-3 * r0, observer);
    } catch (const Overflow&) {
        out.message = "solution overflowed";
    }
    const std::size_t got = fp.size();
    out.r_reached = got ? times[got - 1] : r0;
    if (got < 5) {
        out.message = "integration stopped at the first steps";
        return out;
    }
    out.pair.f_plus = sampled_profile(u0, h, fp);
    out.pair.f_minus = sampled_profile(u0, h, fm);

    const WeightExpr omega = options.omega.value_or(eta);
    // Weighted norm in log r by the trapezoid rule; the tail share decides.
    std::vector<double> cumulative(got, 0.0);
    auto density = [&](std::size_t i) {
        const double r = times[i];
        const double v = (fp[i] * fp[i] + fm[i] * fm[i]) * weight_ratio(omega, eta, r) * r;
        return std::isfinite(v) ? v : kInf;
    };
    double prev = density(0);
    for (std::size_t i = 1; i < got; ++i) {
        const double cur = density(i);
        cumulative[i] = cumulative[i - 1] + 0.5 * h * (prev + cur);
        prev = cur;
    }
    const double total = cumulative.back();
    const double cut = std::log(1.5) / h;
    const std::size_t back = got - 1 - std::min(got - 1, static_cast<std::size_t>(std::ceil(cut)));
    out.tail_fraction = std::isfinite(total) && total > 0.0 ? (total - cumulative[back]) / total : 1.0;
    out.integrable = got == n && out.tail_fraction < 1e-8;
    if (out.message.empty())
        out.message = out.integrable ? "regular solution is square-integrable on the working domain"
                                     : "not attained on working domain";
    else
        out.message += "; not attained on working domain";
    return out;
}

SpinorField assemble_minimizer_field(const RadialProfilePair& kappa_minus, const RadialProfilePair& kappa_plus,
                                     const std::array<Complex, 4>& v) {
    if (kappa_minus.channel.kappa() != -1 || kappa_plus.channel.kappa() != 1)
        throw std::invalid_argument(
            "minimizer field: equality in the spin-orbit bound needs kappa = -1 and kappa = +1 channels");
    const double s = std::sqrt(4.0 * std::numbers::pi);
    const Complex i{0.0, 1.0};
    SpinorField field;
    auto upper = [&](int two_m, Complex amp) {
        if (amp == Complex{}) return;
        RadialProfilePair p;
        p.channel = ChannelIndex(1, two_m, -1);
        p.f_plus = kappa_minus.f_plus;
        p.f_minus = zero_profile();
        p.a_plus = amp;
        field.add(p);
    };
    auto lower = [&](int two_m, Complex amp) {
        if (amp == Complex{}) return;
        RadialProfilePair p;
        p.channel = ChannelIndex(1, two_m, 1);
        p.f_plus = zero_profile();
        p.f_minus = kappa_plus.f_minus;
        p.a_minus = amp;
        field.add(p);
    };
    upper(1, -i * s * v[0]);
    upper(-1, -i * s * v[1]);
    lower(1, s * v[2]);
    lower(-1, s * v[3]);
    return field;
}

}  // namespace hardy
