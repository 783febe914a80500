#ifndef GMAJOR_SAMPLING_HPP
#define GMAJOR_SAMPLING_HPP

#include "gmajor/rational.hpp"

#include <cstdint>
#include <random>

namespace gmajor {

/// Deterministic sampler of exact rationals with bounded denominator.
/// Coordinates are uniform over {num/den : |num| <= bound*den, den <= 64},
/// matching the distribution fixed for all seeded suites.
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

    Rat rational(long bound = 10, long max_den = 64)
    {
        std::uniform_int_distribution<long> den_dist(1, max_den);
        long den = den_dist(rng_);
        std::uniform_int_distribution<long> num_dist(-bound * den, bound * den);
        return Rat(num_dist(rng_)) / Rat(den);
    }

    Rat nonneg_rational(long bound = 10, long max_den = 64)
    {
        std::uniform_int_distribution<long> den_dist(1, max_den);
        long den = den_dist(rng_);
        std::uniform_int_distribution<long> num_dist(0, bound * den);
        return Rat(num_dist(rng_)) / Rat(den);
    }

    Vec vector(std::size_t dim, long bound = 10, long max_den = 64)
    {
        Vec v(dim);
        for (auto& x : v)
            x = rational(bound, max_den);
        return v;
    }

    std::size_t index(std::size_t n)
    {
        std::uniform_int_distribution<std::size_t> d(0, n - 1);
        return d(rng_);
    }

    double real(double lo, double hi)
    {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(rng_);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Random convex weights: positive rationals summing to exactly 1.
inline std::vector<Rat> convex_weights(RationalSampler& s, std::size_t k)
{
    std::vector<Rat> w(k);
    Rat total = 0;
    for (auto& x : w) {
        x = s.nonneg_rational(10, 16) + Rat(1, 16); // bounded away from 0
        total += x;
    }
    for (auto& x : w)
        x /= total;
    return w;
}

} // namespace gmajor

#endif
