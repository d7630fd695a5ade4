#pragma once

// Deterministic, platform-independent random source. std::mt19937_64 with the
// standard distribution templates is not reproducible across standard library
// implementations, so all range reduction is done by hand here.

#include <convind/point.hpp>
#include <convind/rational.hpp>

#include <cstdint>

namespace convind {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // splitmix64 step: full 64-bit output, passes standard statistical tests.
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish in [0, bound); modulo bias is irrelevant at our bounds.
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    long int_in(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Rational in [-magnitude, magnitude] with denominator in [1, den_cap].
    Rational rational(long den_cap, long magnitude) {
        long den = int_in(1, den_cap);
        long num = int_in(-magnitude * den, magnitude * den);
        return rat(num, den);
    }

    Vec point(int dim, long den_cap, long magnitude) {
        Vec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = rational(den_cap, magnitude);
        return v;
    }

    // Independent generator for a named substream; stable under reordering of
    // other draws from the parent.
    Rng fork(std::uint64_t stream) const {
        Rng r(state_ ^ (0xD1B54A32D192ED03ULL * (stream + 1)));
        r.next();
        return r;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::uint64_t state_;
};

}  // namespace convind
