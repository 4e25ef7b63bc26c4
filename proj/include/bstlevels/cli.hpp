#ifndef BSTLEVELS_CLI_HPP
#define BSTLEVELS_CLI_HPP

#include <bstlevels/rational.hpp>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace bstlevels
{

inline constexpr int exit_ok = 0;
inline constexpr int exit_mismatch = 1;
inline constexpr int exit_usage = 2;

/// Hard ceiling on exhaustive enumeration when --cap-override is given.
inline constexpr int override_enumeration_limit = 13;

/// Substitutes for pipeline pieces; used by tests to exercise failure paths.
struct CliHooks
{
    /// Replaces [x^n] A_k in `verify` when set.
    std::function<Rational(int k, int n)> expected_count;
};

/// Runs the command line `args` (program name excluded) and returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, const CliHooks &hooks = {});

} // namespace bstlevels

#endif
