#pragma once

// Amplitude-update stencils shared by StateVector and the gradient tape.
// All take bit positions (not wire indices) and assume amp.size() is a
// power of two covering every bit they touch.

#include <array>
#include <cmath>
#include <complex>
#include <span>

namespace qedacvc::detail {

using cplx = std::complex<double>;

inline void apply1(std::span<cplx> amp, int bit, const std::array<cplx, 4>& m) {
  const size_t step = size_t{1} << bit;
  const size_t n = amp.size();
  for (size_t base = 0; base < n; base += 2 * step) {
    for (size_t k = 0; k < step; ++k) {
      cplx a = amp[base + k];
      cplx b = amp[base + k + step];
      amp[base + k] = m[0] * a + m[1] * b;
      amp[base + k + step] = m[2] * a + m[3] * b;
    }
  }
}

// bit_hi is the first listed wire of the gate (high bit of the 4-dim basis).
inline void apply2(std::span<cplx> amp, int bit_hi, int bit_lo, const std::array<cplx, 16>& m) {
  const size_t mh = size_t{1} << bit_hi;
  const size_t ml = size_t{1} << bit_lo;
  const size_t n = amp.size();
  for (size_t i = 0; i < n; ++i) {
    if (i & (mh | ml)) continue;
    const size_t i00 = i, i01 = i | ml, i10 = i | mh, i11 = i | mh | ml;
    cplx a = amp[i00], b = amp[i01], c = amp[i10], d = amp[i11];
    amp[i00] = m[0] * a + m[1] * b + m[2] * c + m[3] * d;
    amp[i01] = m[4] * a + m[5] * b + m[6] * c + m[7] * d;
    amp[i10] = m[8] * a + m[9] * b + m[10] * c + m[11] * d;
    amp[i11] = m[12] * a + m[13] * b + m[14] * c + m[15] * d;
  }
}

inline void apply_ry(std::span<cplx> amp, int bit, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const size_t step = size_t{1} << bit;
  const size_t n = amp.size();
  for (size_t base = 0; base < n; base += 2 * step) {
    for (size_t k = 0; k < step; ++k) {
      cplx a = amp[base + k];
      cplx b = amp[base + k + step];
      amp[base + k] = c * a - s * b;
      amp[base + k + step] = s * a + c * b;
    }
  }
}

inline void apply_rz(std::span<cplx> amp, int bit, double theta) {
  const cplx e0 = std::polar(1.0, -theta / 2), e1 = std::polar(1.0, theta / 2);
  const size_t mask = size_t{1} << bit;
  const size_t n = amp.size();
  for (size_t i = 0; i < n; ++i) amp[i] *= (i & mask) ? e1 : e0;
}

inline void apply_h(std::span<cplx> amp, int bit) {
  const double r = 1.0 / std::sqrt(2.0);
  const size_t step = size_t{1} << bit;
  const size_t n = amp.size();
  for (size_t base = 0; base < n; base += 2 * step) {
    for (size_t k = 0; k < step; ++k) {
      cplx a = amp[base + k];
      cplx b = amp[base + k + step];
      amp[base + k] = r * (a + b);
      amp[base + k + step] = r * (a - b);
    }
  }
}

inline void apply_cnot(std::span<cplx> amp, int bit_control, int bit_target) {
  const size_t mc = size_t{1} << bit_control;
  const size_t mt = size_t{1} << bit_target;
  const size_t n = amp.size();
  for (size_t i = 0; i < n; ++i) {
    if ((i & mc) && !(i & mt)) std::swap(amp[i], amp[i | mt]);
  }
}

inline void apply_rzz(std::span<cplx> amp, int bit_a, int bit_b, double theta) {
  const cplx even = std::polar(1.0, -theta / 2), odd = std::polar(1.0, theta / 2);
  const size_t ma = size_t{1} << bit_a, mb = size_t{1} << bit_b;
  const size_t n = amp.size();
  for (size_t i = 0; i < n; ++i) {
    const bool same = ((i & ma) != 0) == ((i & mb) != 0);
    amp[i] *= same ? even : odd;
  }
}

// RXX couples |00>~|11> and |01>~|10>; RYY is the same structure with an
// opposite sign on the outer pair.
inline void apply_rxx(std::span<cplx> amp, int bit_a, int bit_b, double theta) {
  const double c = std::cos(theta / 2);
  const cplx is(0.0, std::sin(theta / 2));
  const size_t ma = size_t{1} << bit_a, mb = size_t{1} << bit_b;
  const size_t n = amp.size();
  for (size_t i = 0; i < n; ++i) {
    if (i & (ma | mb)) continue;
    const size_t i00 = i, i01 = i | mb, i10 = i | ma, i11 = i | ma | mb;
    cplx a = amp[i00], b = amp[i01], cc = amp[i10], d = amp[i11];
    amp[i00] = c * a - is * d;
    amp[i11] = c * d - is * a;
    amp[i01] = c * b - is * cc;
    amp[i10] = c * cc - is * b;
  }
}

inline void apply_ryy(std::span<cplx> amp, int bit_a, int bit_b, double theta) {
  const double c = std::cos(theta / 2);
  const cplx is(0.0, std::sin(theta / 2));
  const size_t ma = size_t{1} << bit_a, mb = size_t{1} << bit_b;
  const size_t n = amp.size();
  for (size_t i = 0; i < n; ++i) {
    if (i & (ma | mb)) continue;
    const size_t i00 = i, i01 = i | mb, i10 = i | ma, i11 = i | ma | mb;
    cplx a = amp[i00], b = amp[i01], cc = amp[i10], d = amp[i11];
    amp[i00] = c * a + is * d;
    amp[i11] = c * d + is * a;
    amp[i01] = c * b - is * cc;
    amp[i10] = c * cc - is * b;
  }
}

inline double expect_z(std::span<const cplx> amp, int bit) {
  const size_t mask = size_t{1} << bit;
  double acc = 0.0;
  for (size_t i = 0; i < amp.size(); ++i) {
    const double p = std::norm(amp[i]);
    acc += (i & mask) ? -p : p;
  }
  return acc;
}

inline void expect_z_multi(std::span<const cplx> amp, std::span<const int> bits,
                           std::span<double> out) {
  for (auto& v : out) v = 0.0;
  for (size_t i = 0; i < amp.size(); ++i) {
    const double p = std::norm(amp[i]);
    for (size_t w = 0; w < bits.size(); ++w) {
      out[w] += (i & (size_t{1} << bits[w])) ? -p : p;
    }
  }
}

}  // namespace qedacvc::detail
