#ifndef ELLIPSUM_RNG_HPP
#define ELLIPSUM_RNG_HPP

#include <cstdint>
#include <string>

#include "ellipsum/params.hpp"

namespace ellipsum {

/// Counter-free splitmix64 stream. Per-trial streams are derived from
/// (suite seed, identity slug, trial index), so results do not depend on
/// execution order or thread count.
class RngStream {
  public:
    explicit RngStream(std::uint64_t state) : state_(state) {}

    static RngStream for_trial(std::uint64_t seed, const std::string& id,
                               std::uint64_t trial_index);

    std::uint64_t next_u64();
    /// Uniform in [0,1).
    double uniform();
    /// Uniform integer in [lo, hi] inclusive.
    long uniform_int(long lo, long hi);
    /// Modulus log-uniform in [lo, hi], phase uniform.
    cx annulus(double lo, double hi);

  private:
    std::uint64_t state_;
};

/// Registry-wide default sampling ranges: free complex parameters from the
/// annulus [0.3, 1.5], |q| in [0.2, 0.8], |p| in [0.05, 0.5], both sampled
/// through their primitives t and s.
cx sample_free(RngStream& rng);
EllipticParams sample_params(RngStream& rng);
/// Same t-primitive sampling with p = 0 (basic case).
EllipticParams sample_params_p0(RngStream& rng);

}  // namespace ellipsum

#endif
