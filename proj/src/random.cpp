#include "shiftlab/random.hpp"

#include <numbers>

namespace shiftlab
{

namespace
{

std::uint64_t splitmix(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

Rng Rng::stream(std::uint64_t seed, std::uint64_t index)
{
    return Rng(splitmix(splitmix(seed) ^ (index * 0xD1B54A32D192ED03ULL + 1)));
}

double Rng::gaussian()
{
    if (has_spare_)
    {
        has_spare_ = false;
        return spare_;
    }
    double u = 0.0;
    while (u == 0.0)
        u = uniform();
    double v = uniform();
    double r = std::sqrt(-2.0 * std::log(u));
    double a = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

Index Rng::integer(Index lo, Index hi)
{
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<Index>(engine_() % span);
}

double Rng::phase_angle() { return uniform(-std::numbers::pi, std::numbers::pi); }

} // namespace shiftlab
