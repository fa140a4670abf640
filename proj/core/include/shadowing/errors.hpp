#pragma once

#include <stdexcept>
#include <string>

namespace shadowing {

// Malformed or out-of-domain input: bad parameters, mismatched endpoints,
// points outside the declared domain, unparseable files.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A constructor-time certificate failed: an expansion/crossing condition does
// not hold for the requested parameters, or a homotopy violates its endpoint
// identities. The message carries the measured margins.
struct certificate_error : std::runtime_error {
    explicit certificate_error(const std::string& what) : std::runtime_error(what) {}
};

// An iteration ran out of room: the finite window is too short to reach the
// requested tolerance. The message reports the window length that would do.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace shadowing
