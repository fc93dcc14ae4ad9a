// random.hpp — seeded generators for test channels and isometries.
//
// Gaussians come from an explicit Box-Muller over mt19937_64 bits, so a seed
// produces the same stream on every platform.
#pragma once

#include "chanlink/channel.hpp"
#include "chanlink/dilation.hpp"

#include <cstdint>
#include <random>

namespace chanlink {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform();          // [0, 1)
    double normal();           // standard normal
    Complex complex_normal();  // (normal + i normal)/sqrt(2)

private:
    std::mt19937_64 eng_;
};

Matrix haar_unitary(Index d, Rng& rng);

// First `cols` columns of a Haar unitary on `rows` dimensions (rows >= cols).
Matrix haar_isometry(Index rows, Index cols, Rng& rng);

// CPTP channel from a Haar isometry H_in -> H_out x H_env; env_dim controls
// the generic Kraus rank (env_dim = d_out * d_in gives full-rank Chois).
Channel random_channel(std::vector<Leg> in_legs, std::vector<Leg> out_legs, Index env_dim, Rng& rng);

Isometry random_isometry(std::vector<Leg> in_legs, std::vector<Leg> out_legs, std::vector<Leg> anc_legs,
                         Rng& rng);

} // namespace chanlink
