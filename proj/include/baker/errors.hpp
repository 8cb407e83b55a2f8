#pragma once

#include <stdexcept>
#include <string>

namespace baker {

struct invalid_parameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The halving search for the perturbation size ran out of double precision
// before every admissibility check passed.
struct eps_search_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sub-disc radius fell below the representable-resolution guard at its center.
struct radius_collapse : std::runtime_error {
    radius_collapse(const std::string& what, int level_, int index_)
        : std::runtime_error(what), level(level_), index(index_) {}
    int level = -1;
    int index = -1;
};

struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct model_io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace baker
