#include "ellipsum/rng.hpp"

#include <cmath>

namespace ellipsum {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

RngStream RngStream::for_trial(std::uint64_t seed, const std::string& id,
                               std::uint64_t trial_index) {
    std::uint64_t x = seed;
    std::uint64_t a = splitmix64(x);
    x ^= fnv1a(id);
    std::uint64_t b = splitmix64(x);
    x ^= trial_index * 0x9e3779b97f4a7c15ULL;
    std::uint64_t c = splitmix64(x);
    return RngStream(a ^ (b * 3) ^ (c * 7));
}

std::uint64_t RngStream::next_u64() { return splitmix64(state_); }

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

long RngStream::uniform_int(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(next_u64() % span);
}

cx RngStream::annulus(double lo, double hi) {
    const double m = std::exp(std::log(lo) + uniform() * (std::log(hi) - std::log(lo)));
    const double phase = uniform() * 2.0 * 3.14159265358979323846;
    return cx(m * std::cos(phase), m * std::sin(phase));
}

cx sample_free(RngStream& rng) { return rng.annulus(0.3, 1.5); }

EllipticParams sample_params(RngStream& rng) {
    // |q| in [0.2, 0.8] via |t| in [0.2^{1/4}, 0.8^{1/4}]; |p| in [0.05, 0.5]
    // via |s| in [0.05^{1/6}, 0.5^{1/6}].
    const cx t = rng.annulus(std::pow(0.2, 0.25), std::pow(0.8, 0.25));
    const cx s = rng.annulus(std::pow(0.05, 1.0 / 6.0), std::pow(0.5, 1.0 / 6.0));
    return EllipticParams(t, s);
}

EllipticParams sample_params_p0(RngStream& rng) {
    const cx t = rng.annulus(std::pow(0.2, 0.25), std::pow(0.8, 0.25));
    return EllipticParams(t, cx(0.0, 0.0));
}

}  // namespace ellipsum
