#pragma once

#include <stdexcept>
#include <string>

namespace uniring {

// A per-process variable value. Values range over Z_M = {0..M-1}.
using Value = int;

// The finite value domain shared by every process variable.
// Invariant: size >= 2.
struct Domain {
    int size = 2;

    explicit Domain(int m) : size(m) {
        if (m < 2) {
            throw std::invalid_argument(
                "domain size must be at least 2, got " + std::to_string(m));
        }
    }

    bool contains(Value v) const { return v >= 0 && v < size; }

    friend bool operator==(const Domain&, const Domain&) = default;
};

} // namespace uniring
