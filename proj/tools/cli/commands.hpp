#pragma once

#include "cli/run_config.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,     ///< an identity check failed
    exit_violation = 2,   ///< the inequality failed (never expected)
    exit_divergent = 3,   ///< divergent integral or extremum at a domain boundary
    exit_config = 4,      ///< bad configuration or inadmissible weight pair
};

int cmd_weights(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_scan(const RunConfig& config, std::ostream& out);
int cmd_identities(const RunConfig& config, std::ostream& out);
int cmd_oracle(const RunConfig& config, std::ostream& out);

/// Dispatches on config.command; ConfigError and parse errors become exit_config.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct IdentityCheck {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

std::vector<IdentityCheck> identity_suite(const RunConfig& config);

}  // namespace hardy::cli
