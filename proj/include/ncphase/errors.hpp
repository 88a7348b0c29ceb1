#pragma once

#include <stdexcept>
#include <string>

namespace ncphase {

// Raised when a measurement/protocol step is requested that the active
// algebra forbids (e.g. jointly measuring observables whose star-commutator
// does not vanish). The message names the offending pair and its commutator.
class protocol_error : public std::runtime_error {
public:
    explicit protocol_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ncphase
