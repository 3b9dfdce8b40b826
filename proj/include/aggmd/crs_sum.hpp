#pragma once

// Alternating binomial double sum behind the CRS conditional success
// probability, templated on the working scalar.
//
//   S = sum_{l=q}^{K} sum_{r=0}^{l} C(K,l) C(l,r) (-1)^r L(K - l + r),
//   L(j) = prod_i [1 + j theta c_i]^{-1},
//
// so that P_s = 1 - S. Individual terms reach sum_l C(K,l) 2^l in magnitude
// while S itself is a probability, so the scalar must carry that many bits
// plus the target accuracy. With Scalar = double the sum is only usable for
// small K.

#include <cstddef>
#include <span>
#include <vector>

namespace aggmd {

template <class Scalar>
std::vector<Scalar> crs_laplace_table(double theta, int k, std::span<const double> ratios) {
  std::vector<Scalar> scaled;
  scaled.reserve(ratios.size());
  for (double c : ratios) {
    Scalar a(theta);
    a *= c;
    scaled.push_back(a);
  }
  std::vector<Scalar> table(static_cast<std::size_t>(k) + 1);
  Scalar prod;
  Scalar factor;
  for (int j = 0; j <= k; ++j) {
    prod = 1;
    const auto jj = static_cast<unsigned>(j);
    for (const auto& a : scaled) {
      factor = a;
      factor *= jj;
      factor += 1;
      prod *= factor;
    }
    Scalar inv(1);
    inv /= prod;
    table[static_cast<std::size_t>(j)] = inv;
  }
  return table;
}

/// S for worst-case rank threshold q (1 <= q <= k).
template <class Scalar>
Scalar crs_outage_sum(double theta, int k, int q, std::span<const double> ratios) {
  const auto laplace = crs_laplace_table<Scalar>(theta, k, ratios);

  // C(k, q) by the multiplicative recurrence; exact while the scalar holds k bits.
  Scalar c_kl(1);
  for (int l = 0; l < q; ++l) {
    c_kl *= static_cast<unsigned>(k - l);
    c_kl /= static_cast<unsigned>(l + 1);
  }

  Scalar total(0);
  Scalar inner;
  Scalar c_lr;
  Scalar term;
  for (int l = q; l <= k; ++l) {
    inner = 0;
    c_lr = 1;
    for (int r = 0; r <= l; ++r) {
      term = c_lr;
      term *= laplace[static_cast<std::size_t>(k - l + r)];
      if (r % 2 == 0) {
        inner += term;
      } else {
        inner -= term;
      }
      c_lr *= static_cast<unsigned>(l - r);
      c_lr /= static_cast<unsigned>(r + 1);
    }
    term = c_kl;
    term *= inner;
    total += term;
    c_kl *= static_cast<unsigned>(k - l);
    c_kl /= static_cast<unsigned>(l + 1);
  }
  return total;
}

template <class Scalar>
Scalar crs_success_sum(double theta, int k, int q, std::span<const double> ratios) {
  Scalar out(1);
  out -= crs_outage_sum<Scalar>(theta, k, q, ratios);
  return out;
}

}  // namespace aggmd
