#pragma once

#include <stdexcept>
#include <string>

namespace latcode {

// A stated counting hypothesis does not hold for the given input. This is
// an expected negative outcome, distinct from an internal failure.
struct HypothesisViolation : std::runtime_error {
    explicit HypothesisViolation(const std::string& what) : std::runtime_error(what) {}
};

// A constructive search failed although its hypothesis held. Must not
// happen; callers surface it as a defect instead of a plain failure.
struct DefectError : std::logic_error {
    explicit DefectError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace latcode
