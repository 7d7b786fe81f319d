#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hardy {

/// Radial expression over the grammar
///
///     expr   := term (('+'|'-') term)*
///     term   := factor (('*'|'/') factor)*
///     factor := base ('^' '-'? number)?
///     base   := 'r' | number | '(' expr ')' | 'exp' '(' expr ')' | 'log' '(' expr ')'
///
/// Trees are immutable and shared; copying a WeightExpr is cheap.
class WeightExpr {
public:
    enum class Kind { variable, constant, add, sub, mul, div, pow, exp, log };

    struct Node;

    WeightExpr();  // the constant 0

    static WeightExpr variable();
    static WeightExpr constant(double value);

    friend WeightExpr operator+(const WeightExpr& a, const WeightExpr& b);
    friend WeightExpr operator-(const WeightExpr& a, const WeightExpr& b);
    friend WeightExpr operator*(const WeightExpr& a, const WeightExpr& b);
    friend WeightExpr operator/(const WeightExpr& a, const WeightExpr& b);
    friend WeightExpr pow(const WeightExpr& base, double exponent);
    friend WeightExpr exp(const WeightExpr& arg);
    friend WeightExpr log(const WeightExpr& arg);

    double operator()(double r) const;
    /// log of the value, carried through the tree so that it stays finite where
    /// the value itself overflows; NaN unless the value is positive.
    double log_value(double r) const;

    Kind kind() const;
    /// Literal value (constant) or exponent (pow); 0 otherwise.
    double number() const;
    /// Operands: two for binary nodes, one for pow/exp/log, none for leaves.
    std::vector<WeightExpr> children() const;

    /// Canonical text; parse_weight(str()) prints back to the same string.
    std::string str() const;

    friend bool operator==(const WeightExpr& a, const WeightExpr& b);
    friend WeightExpr parse_weight(std::string_view text);
    friend WeightExpr differentiate(const WeightExpr& w);

private:
    explicit WeightExpr(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

class WeightParseError : public std::runtime_error {
public:
    WeightParseError(const std::string& message, std::size_t column);
    /// 1-based column of the offending character (one past the end at end of input).
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

WeightExpr parse_weight(std::string_view text);

/// Exact symbolic d/dr with light constant folding (x*1, x+0, constant ops).
WeightExpr differentiate(const WeightExpr& w);

struct Domain {
    double r_min = 1e-6;
    double r_max = 1e3;
};

struct ExtremumSearch {
    std::size_t samples = 4096;
    /// Golden-section stop: bracket width in log r.
    double tolerance = 1e-10;
};

enum class ExtremumKind {
    interior,  ///< strict local extremum of the sampled sequence, refined
    plateau,   ///< sampled values constant to 1e-12 relative
    boundary,  ///< still improving at a domain end: sup/inf not attained, value withheld
};

std::string_view to_string(ExtremumKind kind);

struct Extremum {
    double value = 0.0;  ///< NaN when kind == boundary
    double radius = 0.0;
    ExtremumKind kind = ExtremumKind::interior;
};

class WeightAnalysisError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ess sup over the domain of |(w' eta - w eta') / w|, evaluated as
/// |eta (w'/w - eta'/eta)| so that exponentially large weights stay finite.
/// Throws WeightAnalysisError when a weight is not positive or not finite on the
/// (possibly clipped) domain.
Extremum compute_gamma(const WeightExpr& omega, const WeightExpr& eta, Domain domain = {},
                       ExtremumSearch search = {});

/// ess inf over the domain of eta(r) / r.
Extremum compute_tau(const WeightExpr& eta, Domain domain = {}, ExtremumSearch search = {});

struct WeightAnalysis {
    std::string omega;
    std::string eta;
    Domain domain;  ///< after clipping of overflow at the upper end
    Extremum gamma;
    Extremum tau;
    bool admissible = true;  ///< false when a weight is non-positive or non-finite on the domain
    bool valid = false;  ///< both extrema finite and tau >= gamma / 2 >= 0
    double sharp_constant = 0.0;  ///< (tau - gamma / 2)^2 when valid
    std::vector<std::string> messages;
};

/// Never throws for analysis failures; they are reported through valid/messages.
WeightAnalysis analyze_pair(const WeightExpr& omega, const WeightExpr& eta, Domain domain = {},
                            ExtremumSearch search = {});

/// Largest upper end <= domain.r_max at which both weights and their derivatives
/// are finite, found on the log-spaced analysis grid.
Domain clip_domain(const WeightExpr& omega, const WeightExpr& eta, Domain domain, std::size_t samples = 4096);

}  // namespace hardy
