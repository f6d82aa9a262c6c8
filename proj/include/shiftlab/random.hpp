#pragma once

#include <cstdint>
#include <random>

#include "shiftlab/types.hpp"

namespace shiftlab
{

// Drawn by hand from the raw engine output so that streams are identical on every
// standard library (the std distributions are implementation-defined).
class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Stream `index` of a seeded family; streams for different indices are unrelated.
    static Rng stream(std::uint64_t seed, std::uint64_t index);

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double gaussian();
    Complex complex_gaussian() { return {gaussian(), gaussian()}; }
    Index integer(Index lo, Index hi); // inclusive
    double phase_angle();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace shiftlab
