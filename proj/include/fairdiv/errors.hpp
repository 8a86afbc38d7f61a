#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

// Bad caller input: malformed instances, indices out of range, precondition
// violations the caller could have avoided. The CLI maps this to exit code 1.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive search was asked to do more work than its budget allows.
// Carries the budget that would have been needed so callers can report it.
struct BudgetExceeded : std::runtime_error {
    unsigned long long required;
    unsigned long long allowed;
    BudgetExceeded(unsigned long long required_, unsigned long long allowed_)
        : std::runtime_error("search budget exceeded: needs " + std::to_string(required_) +
                             " assignments, budget is " + std::to_string(allowed_)),
          required(required_), allowed(allowed_) {}
};

// The RefuseAll cycle policy hit a round that cannot proceed without
// resolving an envy cycle. The message names the offending cycle.
struct CyclePolicyRefusal : std::runtime_error {
    explicit CyclePolicyRefusal(const std::string& what) : std::runtime_error(what) {}
};

// Internal invariant failures. If one of these escapes, the library has a bug
// (the CLI maps a fairness self-check failure to exit code 2).
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InputError(what);
}

inline void internal_check(bool cond, const std::string& what) {
    if (!cond) throw InternalError(what);
}

} // namespace fairdiv
