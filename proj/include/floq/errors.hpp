// errors.hpp — exception types for numeric and consistency failures

#pragma once

#include <stdexcept>
#include <string>

namespace floq {

// Eigensolver or integrator breakdown; carries context about the failing problem.
class NumericFailure : public std::runtime_error {
public:
    explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

// A perturbative denominator collapsed: an extra resonance the caller did not declare.
class DegenerateChannelError : public std::runtime_error {
public:
    DegenerateChannelError(const std::string& what, int channel)
        : std::runtime_error(what), channel_(channel) {}
    int channel() const noexcept { return channel_; }

private:
    int channel_;
};

// Two supposedly equivalent computation routes disagree beyond tolerance.
class InternalConsistencyError : public std::runtime_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace floq
