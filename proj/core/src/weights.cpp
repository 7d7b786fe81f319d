#include "hardy/weights.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace hardy {

struct WeightExpr::Node {
    Kind kind;
    double number = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const WeightExpr::Node>;
using Kind = WeightExpr::Kind;

NodePtr make_node(Kind kind, double number = 0.0, NodePtr a = nullptr, NodePtr b = nullptr) {
    return std::make_shared<const WeightExpr::Node>(WeightExpr::Node{kind, number, std::move(a), std::move(b)});
}

bool is_const(const NodePtr& n, double v) { return n->kind == Kind::constant && n->number == v; }
bool is_const(const NodePtr& n) { return n->kind == Kind::constant; }

NodePtr fold_add(const NodePtr& a, const NodePtr& b) {
    if (is_const(a) && is_const(b)) return make_node(Kind::constant, a->number + b->number);
    if (is_const(a, 0.0)) return b;
    if (is_const(b, 0.0)) return a;
    return make_node(Kind::add, 0.0, a, b);
}

NodePtr fold_sub(const NodePtr& a, const NodePtr& b) {
    if (is_const(a) && is_const(b)) return make_node(Kind::constant, a->number - b->number);
    if (is_const(b, 0.0)) return a;
    return make_node(Kind::sub, 0.0, a, b);
}

NodePtr fold_mul(const NodePtr& a, const NodePtr& b) {
    if (is_const(a) && is_const(b)) return make_node(Kind::constant, a->number * b->number);
    if (is_const(a, 0.0) || is_const(b, 0.0)) return make_node(Kind::constant, 0.0);
    if (is_const(a, 1.0)) return b;
    if (is_const(b, 1.0)) return a;
    return make_node(Kind::mul, 0.0, a, b);
}

NodePtr fold_div(const NodePtr& a, const NodePtr& b) {
    if (is_const(a) && is_const(b) && b->number != 0.0) return make_node(Kind::constant, a->number / b->number);
    if (is_const(a, 0.0)) return a;
    if (is_const(b, 1.0)) return a;
    return make_node(Kind::div, 0.0, a, b);
}

NodePtr fold_pow(const NodePtr& base, double e) {
    if (e == 0.0) return make_node(Kind::constant, 1.0);
    if (e == 1.0) return base;
    if (is_const(base)) return make_node(Kind::constant, std::pow(base->number, e));
    return make_node(Kind::pow, e, base);
}

double eval(const WeightExpr::Node& n, double r) {
    switch (n.kind) {
        case Kind::variable: return r;
        case Kind::constant: return n.number;
        case Kind::add: return eval(*n.a, r) + eval(*n.b, r);
        case Kind::sub: return eval(*n.a, r) - eval(*n.b, r);
        case Kind::mul: return eval(*n.a, r) * eval(*n.b, r);
        case Kind::div: return eval(*n.a, r) / eval(*n.b, r);
        case Kind::pow: return std::pow(eval(*n.a, r), n.number);
        case Kind::exp: return std::exp(eval(*n.a, r));
        case Kind::log: return std::log(eval(*n.a, r));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// value as sign * exp(log), so that quotients of overflowing weights stay finite
struct SignedLog {
    int sign;
    double log;
};

SignedLog signed_log(double v) {
    if (std::isnan(v)) return {1, v};
    if (v == 0.0) return {0, -std::numeric_limits<double>::infinity()};
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

SignedLog eval_log(const WeightExpr::Node& n, double r) {
    switch (n.kind) {
        case Kind::variable: return signed_log(r);
        case Kind::constant: return signed_log(n.number);
        case Kind::add:
        case Kind::sub: {
            const SignedLog x = eval_log(*n.a, r);
            SignedLog y = eval_log(*n.b, r);
            if (n.kind == Kind::sub) y.sign = -y.sign;
            if (x.sign == 0) return y;
            if (y.sign == 0) return x;
            const double m = std::max(x.log, y.log);
            const double v = x.sign * std::exp(x.log - m) + y.sign * std::exp(y.log - m);
            SignedLog out = signed_log(v);
            out.log += m;
            return out;
        }
        case Kind::mul:
        case Kind::div: {
            const SignedLog x = eval_log(*n.a, r);
            const SignedLog y = eval_log(*n.b, r);
            if (n.kind == Kind::div && y.sign == 0) return {1, std::numeric_limits<double>::quiet_NaN()};
            return {x.sign * y.sign, n.kind == Kind::mul ? x.log + y.log : x.log - y.log};
        }
        case Kind::pow: {
            const SignedLog x = eval_log(*n.a, r);
            if (x.sign == 0) return signed_log(std::pow(0.0, n.number));
            int sign = 1;
            if (x.sign < 0) {
                if (n.number != std::round(n.number)) return {1, std::numeric_limits<double>::quiet_NaN()};
                if (std::fmod(std::abs(n.number), 2.0) == 1.0) sign = -1;
            }
            return {sign, n.number * x.log};
        }
        case Kind::exp: {
            const SignedLog x = eval_log(*n.a, r);
            return {1, x.sign * std::exp(x.log)};
        }
        case Kind::log: {
            const SignedLog x = eval_log(*n.a, r);
            if (x.sign <= 0) return {1, std::numeric_limits<double>::quiet_NaN()};
            return signed_log(x.log);
        }
    }
    return {1, std::numeric_limits<double>::quiet_NaN()};
}

NodePtr derive(const NodePtr& n) {
    switch (n->kind) {
        case Kind::variable: return make_node(Kind::constant, 1.0);
        case Kind::constant: return make_node(Kind::constant, 0.0);
        case Kind::add: return fold_add(derive(n->a), derive(n->b));
        case Kind::sub: return fold_sub(derive(n->a), derive(n->b));
        case Kind::mul: return fold_add(fold_mul(derive(n->a), n->b), fold_mul(n->a, derive(n->b)));
        case Kind::div:
            return fold_div(fold_sub(fold_mul(derive(n->a), n->b), fold_mul(n->a, derive(n->b))),
                            fold_pow(n->b, 2.0));
        case Kind::pow:
            return fold_mul(fold_mul(make_node(Kind::constant, n->number), fold_pow(n->a, n->number - 1.0)),
                            derive(n->a));
        case Kind::exp: return fold_mul(n, derive(n->a));
        case Kind::log: return fold_div(derive(n->a), n->a);
    }
    return make_node(Kind::constant, 0.0);
}

bool same_tree(const NodePtr& x, const NodePtr& y) {
    if (x == y) return true;
    if (!x || !y) return false;
    if (x->kind != y->kind || x->number != y->number) return false;
    return same_tree(x->a, y->a) && same_tree(x->b, y->b);
}

// ---------------------------------------------------------------------------
// printing

std::string format_number(double v) {
    std::array<char, 512> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
    if (ec != std::errc{}) return "nan";
    return {buf.data(), end};
}

constexpr int kPrecAdd = 1;
constexpr int kPrecMul = 2;
constexpr int kPrecPow = 3;
constexpr int kPrecAtom = 4;

int precedence(const WeightExpr::Node& n) {
    switch (n.kind) {
        case Kind::add:
        case Kind::sub: return kPrecAdd;
        case Kind::mul:
        case Kind::div: return kPrecMul;
        case Kind::pow: return n.number < 0.0 ? kPrecMul : kPrecPow;
        case Kind::constant: return n.number < 0.0 ? kPrecAdd : kPrecAtom;
        default: return kPrecAtom;
    }
}

void print(const WeightExpr::Node& n, int required, std::ostream& os);

void print_binary(const WeightExpr::Node& a, const char* op, const WeightExpr::Node& b, int prec, std::ostream& os) {
    print(a, prec, os);
    os << op;
    print(b, prec + 1, os);
}

void print(const WeightExpr::Node& n, int required, std::ostream& os) {
    const bool parens = precedence(n) < required;
    if (parens) os << '(';
    switch (n.kind) {
        case Kind::variable: os << 'r'; break;
        case Kind::constant:
            // The grammar has no unary minus.
            if (n.number < 0.0)
                os << "0-" << format_number(-n.number);
            else
                os << format_number(n.number);
            break;
        case Kind::add: print_binary(*n.a, "+", *n.b, kPrecAdd, os); break;
        case Kind::sub: print_binary(*n.a, "-", *n.b, kPrecAdd, os); break;
        case Kind::mul: print_binary(*n.a, "*", *n.b, kPrecMul, os); break;
        case Kind::div: print_binary(*n.a, "/", *n.b, kPrecMul, os); break;
        case Kind::pow:
            // Exponent literals are unsigned: b^(-e) prints as 1/b^e.
            if (n.number < 0.0) {
                os << "1/";
                print(*n.a, kPrecAtom, os);
                os << '^' << format_number(-n.number);
            } else {
                print(*n.a, kPrecAtom, os);
                os << '^' << format_number(n.number);
            }
            break;
        case Kind::exp:
            os << "exp(";
            print(*n.a, 0, os);
            os << ')';
            break;
        case Kind::log:
            os << "log(";
            print(*n.a, 0, os);
            os << ')';
            break;
    }
    if (parens) os << ')';
}

// ---------------------------------------------------------------------------
// parsing

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip_space();
        if (pos_ < text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw WeightParseError(what, pos_ + 1); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    NodePtr expr() {
        NodePtr n = term();
        for (;;) {
            if (accept('+'))
                n = make_node(Kind::add, 0.0, n, term());
            else if (accept('-'))
                n = make_node(Kind::sub, 0.0, n, term());
            else
                return n;
        }
    }

    NodePtr term() {
        NodePtr n = factor();
        for (;;) {
            if (accept('*'))
                n = make_node(Kind::mul, 0.0, n, factor());
            else if (accept('/'))
                n = make_node(Kind::div, 0.0, n, factor());
            else
                return n;
        }
    }

    NodePtr factor() {
        NodePtr b = base();
        if (accept('^')) {
            skip_space();
            const bool negative = accept('-');
            if (negative) skip_space();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected number after '^'");
            const double e = number();
            return make_node(Kind::pow, negative ? -e : e, b);
        }
        return b;
    }

    double number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected digit after '.'");
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        double v = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (res.ec != std::errc{}) {
            pos_ = start;
            fail("malformed number");
        }
        return v;
    }

    NodePtr base() {
        skip_space();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return make_node(Kind::constant, number());
        if (c == '(') {
            ++pos_;
            NodePtr n = expr();
            expect(')');
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            const std::string_view word = text_.substr(start, pos_ - start);
            if (word == "r") return make_node(Kind::variable);
            if (word == "exp" || word == "log") {
                expect('(');
                NodePtr arg = expr();
                expect(')');
                return make_node(word == "exp" ? Kind::exp : Kind::log, 0.0, arg);
            }
            pos_ = start;
            fail("unknown identifier '" + std::string(word) + "'");
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------

WeightExpr::WeightExpr() : node_(make_node(Kind::constant, 0.0)) {}
WeightExpr::WeightExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

WeightExpr WeightExpr::variable() { return WeightExpr(make_node(Kind::variable)); }
WeightExpr WeightExpr::constant(double value) { return WeightExpr(make_node(Kind::constant, value)); }

WeightExpr operator+(const WeightExpr& a, const WeightExpr& b) {
    return WeightExpr(make_node(Kind::add, 0.0, a.node_, b.node_));
}
WeightExpr operator-(const WeightExpr& a, const WeightExpr& b) {
    return WeightExpr(make_node(Kind::sub, 0.0, a.node_, b.node_));
}
WeightExpr operator*(const WeightExpr& a, const WeightExpr& b) {
    return WeightExpr(make_node(Kind::mul, 0.0, a.node_, b.node_));
}
WeightExpr operator/(const WeightExpr& a, const WeightExpr& b) {
    return WeightExpr(make_node(Kind::div, 0.0, a.node_, b.node_));
}
WeightExpr pow(const WeightExpr& base, double exponent) {
    return WeightExpr(make_node(Kind::pow, exponent, base.node_));
}
WeightExpr exp(const WeightExpr& arg) { return WeightExpr(make_node(Kind::exp, 0.0, arg.node_)); }
WeightExpr log(const WeightExpr& arg) { return WeightExpr(make_node(Kind::log, 0.0, arg.node_)); }

double WeightExpr::operator()(double r) const { return eval(*node_, r); }

double WeightExpr::log_value(double r) const {
    const SignedLog v = eval_log(*node_, r);
    return v.sign > 0 ? v.log : std::numeric_limits<double>::quiet_NaN();
}

WeightExpr::Kind WeightExpr::kind() const { return node_->kind; }

double WeightExpr::number() const {
    return (node_->kind == Kind::constant || node_->kind == Kind::pow) ? node_->number : 0.0;
}

std::vector<WeightExpr> WeightExpr::children() const {
    std::vector<WeightExpr> out;
    if (node_->a) out.push_back(WeightExpr(node_->a));
    if (node_->b) out.push_back(WeightExpr(node_->b));
    return out;
}

std::string WeightExpr::str() const {
    std::ostringstream os;
    print(*node_, 0, os);
    return os.str();
}

bool operator==(const WeightExpr& a, const WeightExpr& b) { return same_tree(a.node_, b.node_); }

WeightParseError::WeightParseError(const std::string& message, std::size_t column)
    : std::runtime_error(message + " at column " + std::to_string(column)), column_(column) {}

WeightExpr parse_weight(std::string_view text) { return WeightExpr(Parser(text).parse()); }

WeightExpr differentiate(const WeightExpr& w) { return WeightExpr(derive(w.node_)); }

// ---------------------------------------------------------------------------
// extrema

std::string_view to_string(ExtremumKind kind) {
    switch (kind) {
        case ExtremumKind::interior: return "interior";
        case ExtremumKind::plateau: return "plateau";
        case ExtremumKind::boundary: return "boundary";
    }
    return "unknown";
}

namespace {

std::vector<double> log_grid(const Domain& d, std::size_t samples) {
    if (!(d.r_min > 0.0) || !(d.r_max > d.r_min)) throw WeightAnalysisError("invalid analysis domain");
    if (samples < 3) throw WeightAnalysisError("need at least 3 samples");
    std::vector<double> u(samples);
    const double a = std::log(d.r_min);
    const double b = std::log(d.r_max);
    for (std::size_t i = 0; i < samples; ++i)
        u[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(samples - 1);
    return u;
}

// Minimizes sign * g over the log grid u, refining interior minima by golden
// section. g takes u = log r.
template <class G>
Extremum find_extremum(const std::vector<double>& u, G&& g, double sign, double tolerance) {
    const std::size_t n = u.size();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = sign * g(u[i]);

    const auto [lo_it, hi_it] = std::minmax_element(w.begin(), w.end());
    const double scale = std::max(std::abs(*lo_it), std::abs(*hi_it));
    const double noise = 1e-12 * scale;
    const std::size_t k = static_cast<std::size_t>(lo_it - w.begin());

    if (*hi_it - *lo_it <= noise) return {sign * w[k], std::exp(u[k]), ExtremumKind::plateau};

    // Boundary trend is judged against the local magnitude, not the global scale.
    auto drops = [](double end, double next) { return end < next - 1e-12 * std::max(std::abs(end), std::abs(next)); };
    if ((k == 0 && drops(w[0], w[1])) || (k == n - 1 && drops(w[n - 1], w[n - 2])))
        return {std::numeric_limits<double>::quiet_NaN(), std::exp(u[k]), ExtremumKind::boundary};

    double best = w[k];
    double best_u = u[k];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const bool local = (w[i] < w[i - 1] && w[i] <= w[i + 1]) || (w[i] <= w[i - 1] && w[i] < w[i + 1]);
        if (!local || w[i] > best + std::max(noise, 1e-9 * std::abs(best))) continue;
        double a = u[i - 1];
        double b = u[i + 1];
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = sign * g(c);
        double fd = sign * g(d);
        while (b - a > tolerance) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = sign * g(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = sign * g(d);
            }
        }
        const double um = 0.5 * (a + b);
        const double fm = sign * g(um);
        if (fm < best) {
            best = fm;
            best_u = um;
        }
    }
    return {sign * best, std::exp(best_u), ExtremumKind::interior};
}

bool finite_at(const WeightExpr& f, double r) { return std::isfinite(f(r)); }

void require_positive_finite(const WeightExpr& f, const char* name, const std::vector<double>& u) {
    for (double ui : u) {
        const double r = std::exp(ui);
        const double v = f(r);
        if (!std::isfinite(v)) {
            std::ostringstream os;
            os << name << " is not finite at r=" << r;
            throw WeightAnalysisError(os.str());
        }
        if (!(v > 0.0)) {
            std::ostringstream os;
            os << name << " is not positive at r=" << r;
            throw WeightAnalysisError(os.str());
        }
    }
}

}  // namespace

Domain clip_domain(const WeightExpr& omega, const WeightExpr& eta, Domain domain, std::size_t samples) {
    const auto u = log_grid(domain, samples);
    const WeightExpr d_omega = differentiate(omega);
    const WeightExpr d_eta = differentiate(eta);
    auto ok = [&](double r) {
        return finite_at(omega, r) && finite_at(eta, r) && finite_at(d_omega, r) && finite_at(d_eta, r);
    };
    std::size_t first = 0;
    while (first < u.size() && !ok(std::exp(u[first]))) ++first;
    if (first == u.size()) throw WeightAnalysisError("weights are not finite anywhere on the domain");
    std::size_t last = first;
    while (last + 1 < u.size() && ok(std::exp(u[last + 1]))) ++last;
    Domain out = domain;
    if (first > 0) out.r_min = std::exp(u[first]);
    if (last + 1 < u.size()) out.r_max = std::exp(u[last]);
    if (!(out.r_max > out.r_min)) throw WeightAnalysisError("finite part of the domain is degenerate");
    return out;
}

Extremum compute_gamma(const WeightExpr& omega, const WeightExpr& eta, Domain domain, ExtremumSearch search) {
    domain = clip_domain(omega, eta, domain, search.samples);
    const auto u = log_grid(domain, search.samples);
    require_positive_finite(omega, "omega", u);
    require_positive_finite(eta, "eta", u);
    const WeightExpr d_omega = differentiate(omega);
    const WeightExpr d_eta = differentiate(eta);
    auto q = [&](double ui) {
        const double r = std::exp(ui);
        const double e = eta(r);
        return std::abs(e * (d_omega(r) / omega(r) - d_eta(r) / e));
    };
    for (double ui : u)
        if (!std::isfinite(q(ui))) throw WeightAnalysisError("gamma integrand is not finite");
    return find_extremum(u, q, -1.0, search.tolerance);
}

Extremum compute_tau(const WeightExpr& eta, Domain domain, ExtremumSearch search) {
    const auto u = log_grid(domain, search.samples);
    require_positive_finite(eta, "eta", u);
    auto q = [&](double ui) {
        const double r = std::exp(ui);
        return eta(r) / r;
    };
    return find_extremum(u, q, 1.0, search.tolerance);
}

WeightAnalysis analyze_pair(const WeightExpr& omega, const WeightExpr& eta, Domain domain, ExtremumSearch search) {
    WeightAnalysis out;
    out.omega = omega.str();
    out.eta = eta.str();
    out.domain = domain;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.gamma = {nan, 0.0, ExtremumKind::boundary};
    out.tau = {nan, 0.0, ExtremumKind::boundary};
    try {
        out.domain = clip_domain(omega, eta, domain, search.samples);
        if (out.domain.r_min != domain.r_min || out.domain.r_max != domain.r_max) {
            std::ostringstream os;
            os << "domain clipped to [" << out.domain.r_min << ", " << out.domain.r_max
               << "] where the weights are finite";
            out.messages.push_back(os.str());
        }
        out.gamma = compute_gamma(omega, eta, out.domain, search);
        out.tau = compute_tau(eta, out.domain, search);
    } catch (const WeightAnalysisError& e) {
        out.messages.emplace_back(e.what());
        out.admissible = false;
        return out;
    }
    if (out.gamma.kind == ExtremumKind::boundary)
        out.messages.emplace_back("gamma: supremum not attained inside the domain");
    if (out.tau.kind == ExtremumKind::boundary)
        out.messages.emplace_back("tau: infimum not attained inside the domain");
    if (out.gamma.kind == ExtremumKind::boundary || out.tau.kind == ExtremumKind::boundary) return out;
    if (out.tau.value < 0.5 * out.gamma.value) {
        out.messages.emplace_back("tau < gamma / 2: the weighted inequality does not apply");
        return out;
    }
    out.valid = true;
    const double t = out.tau.value - 0.5 * out.gamma.value;
    out.sharp_constant = t * t;
    return out;
}

}  // namespace hardy
