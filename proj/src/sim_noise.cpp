// Noise-row generation for the lattice simulator. This translation unit is
// built with relaxed FP rules so the log/sin/cos loops go through the vector
// math library; everything else in the project uses strict math.
#include <cmath>
#include <cstdint>
#include <vector>

#include "pam/philox.hpp"

#if defined(__AVX512F__) && !defined(PAM_NO_AVX512)
#include <immintrin.h>
#endif

namespace pam {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

#if defined(__AVX512F__) && !defined(PAM_NO_AVX512)
// Eight philox blocks per pass; identical streams to the scalar routine.
void philox_bits(std::uint32_t step, std::uint32_t replica, std::uint32_t k0, std::uint32_t k1,
                 int nblocks, std::uint64_t* ra, std::uint64_t* rb) {
  const __m512i M0 = _mm512_set1_epi64(0xD2511F53ull);
  const __m512i M1 = _mm512_set1_epi64(0xCD9E8D57ull);
  const __m512i lane = _mm512_set_epi64(7, 6, 5, 4, 3, 2, 1, 0);
  int b = 0;
  for (; b + 8 <= nblocks; b += 8) {
    __m512i c0 = _mm512_set1_epi64(step);
    __m512i c1 = _mm512_add_epi64(_mm512_set1_epi64(b), lane);
    __m512i c2 = _mm512_set1_epi64(replica);
    __m512i c3 = _mm512_setzero_si512();
    std::uint32_t kk0 = k0, kk1 = k1;
    for (int round = 0; round < 10; ++round) {
      const __m512i p0 = _mm512_mul_epu32(M0, c0);
      const __m512i p1 = _mm512_mul_epu32(M1, c2);
      const __m512i K0 = _mm512_set1_epi64(kk0), K1 = _mm512_set1_epi64(kk1);
      const __m512i LO = _mm512_set1_epi64(0xffffffffull);
      c0 = _mm512_xor_si512(_mm512_xor_si512(_mm512_srli_epi64(p1, 32), c1), K0);
      c1 = _mm512_and_si512(p1, LO);
      c2 = _mm512_xor_si512(_mm512_xor_si512(_mm512_srli_epi64(p0, 32), c3), K1);
      c3 = _mm512_and_si512(p0, LO);
      kk0 += 0x9E3779B9u;
      kk1 += 0xBB67AE85u;
    }
    _mm512_storeu_si512((void*)(ra + b), _mm512_or_si512(_mm512_slli_epi64(c0, 32), c1));
    _mm512_storeu_si512((void*)(rb + b), _mm512_or_si512(_mm512_slli_epi64(c2, 32), c3));
  }
  for (; b < nblocks; ++b) {
    const PhiloxBlock o = philox4x32(step, (std::uint32_t)b, replica, 0u, k0, k1);
    ra[b] = ((std::uint64_t)o.v[0] << 32) | o.v[1];
    rb[b] = ((std::uint64_t)o.v[2] << 32) | o.v[3];
  }
}
#else
void philox_bits(std::uint32_t step, std::uint32_t replica, std::uint32_t k0, std::uint32_t k1,
                 int nblocks, std::uint64_t* ra, std::uint64_t* rb) {
  for (int b = 0; b < nblocks; ++b) {
    const PhiloxBlock o = philox4x32(step, (std::uint32_t)b, replica, 0u, k0, k1);
    ra[b] = ((std::uint64_t)o.v[0] << 32) | o.v[1];
    rb[b] = ((std::uint64_t)o.v[2] << 32) | o.v[3];
  }
}
#endif

struct Scratch {
  std::vector<std::uint64_t> ra, rb;
  std::vector<double> u1, u2, rad, cth, sth;
  void resize(int nb) {
    ra.resize(nb + 8);
    rb.resize(nb + 8);
    u1.resize(nb);
    u2.resize(nb);
    rad.resize(nb);
    cth.resize(nb);
    sth.resize(nb);
  }
};

thread_local Scratch scratch;

}  // namespace

void fill_normal_row(std::uint64_t seed, std::uint32_t replica, std::uint32_t step,
                     int n, double* out) {
  const int nb = (n + 1) / 2;
  Scratch& s = scratch;
  s.resize(nb);
  std::uint64_t* __restrict ra = s.ra.data();
  std::uint64_t* __restrict rb = s.rb.data();
  double* __restrict u1 = s.u1.data();
  double* __restrict u2 = s.u2.data();
  double* __restrict rad = s.rad.data();
  double* __restrict cth = s.cth.data();
  double* __restrict sth = s.sth.data();
  philox_bits(step, replica, (std::uint32_t)seed, (std::uint32_t)(seed >> 32), nb, ra, rb);
  for (int b = 0; b < nb; ++b) {
    u1[b] = u64_to_unit(ra[b]);
    u2[b] = u64_to_unit(rb[b]);
  }
  for (int b = 0; b < nb; ++b) rad[b] = std::sqrt(-2.0 * std::log(u1[b]));
  for (int b = 0; b < nb; ++b) cth[b] = std::cos(kTwoPi * u2[b]);
  for (int b = 0; b < nb; ++b) sth[b] = std::sin(kTwoPi * u2[b]);
  const int pairs = n / 2;
  for (int b = 0; b < pairs; ++b) {
    out[2 * b] = rad[b] * cth[b];
    out[2 * b + 1] = rad[b] * sth[b];
  }
  if (n & 1) out[n - 1] = rad[nb - 1] * cth[nb - 1];
}

}  // namespace pam
