#pragma once

#include <cstdint>

namespace pam {

// Philox4x32-10 counter-based generator. A stream is addressed entirely by
// (key, counter); replicas and time steps map to counter words, so any draw
// can be regenerated in isolation and parallel scheduling cannot reorder
// streams.
struct PhiloxBlock {
  std::uint32_t v[4];
};

inline PhiloxBlock philox4x32(std::uint32_t c0, std::uint32_t c1, std::uint32_t c2,
                              std::uint32_t c3, std::uint32_t k0, std::uint32_t k1) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = (std::uint64_t)M0 * c0;
    const std::uint64_t p1 = (std::uint64_t)M1 * c2;
    const std::uint32_t n0 = (std::uint32_t)(p1 >> 32) ^ c1 ^ k0;
    const std::uint32_t n1 = (std::uint32_t)p1;
    const std::uint32_t n2 = (std::uint32_t)(p0 >> 32) ^ c3 ^ k1;
    const std::uint32_t n3 = (std::uint32_t)p0;
    c0 = n0; c1 = n1; c2 = n2; c3 = n3;
    k0 += W0; k1 += W1;
  }
  return {{c0, c1, c2, c3}};
}

// Uniform in (0, 1): 52 random bits at cell centers, so both endpoints are
// excluded even after rounding and log() stays finite.
inline double u64_to_unit(std::uint64_t x) {
  return ((double)(x >> 12) + 0.5) * 0x1p-52;
}

// The two uniforms backing one Box-Muller pair, as drawn by the simulator for
// noise block `block` of (replica, step). Scalar reference path.
inline void philox_uniform_pair(std::uint64_t seed, std::uint32_t replica, std::uint32_t step,
                                std::uint32_t block, double* u1, double* u2) {
  const PhiloxBlock o = philox4x32(step, block, replica, 0u,
                                   (std::uint32_t)seed, (std::uint32_t)(seed >> 32));
  *u1 = u64_to_unit(((std::uint64_t)o.v[0] << 32) | o.v[1]);
  *u2 = u64_to_unit(((std::uint64_t)o.v[2] << 32) | o.v[3]);
}

// Batched generation of one noise row (n standard normals) for (replica, step).
// Bit-identical to the scalar path for the philox stage; the transcendental
// stage may use vectorized math, so cross-path agreement is to rounding, while
// repeat calls are always bit-identical.
void fill_normal_row(std::uint64_t seed, std::uint32_t replica, std::uint32_t step,
                     int n, double* out);

}  // namespace pam
