#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "beatty/errors.hpp"
#include "beatty/integer_set.hpp"
#include "beatty/real.hpp"

namespace beatty {

// Validated (alpha, gamma) pair indexing the map n -> floor(alpha n + gamma).
class SpectrumParams {
 public:
  SpectrumParams(RealValue alpha, RealValue gamma)
      : alpha_(std::move(alpha)), gamma_(std::move(gamma)) {
    detail::require_alpha(alpha_);
    detail::require_gamma(gamma_);
  }

  const RealValue& alpha() const { return alpha_; }
  const RealValue& gamma() const { return gamma_; }

  std::uint64_t apply(std::uint64_t n) const {
    const BigInt v = floor_affine(alpha_, gamma_, n);
    if (v > std::numeric_limits<std::uint64_t>::max())
      throw RangeError("spectrum value exceeds the 64-bit range");
    return static_cast<std::uint64_t>(v);
  }

 private:
  RealValue alpha_, gamma_;
};

// Image of a finite set under the spectrum map. Zero image elements signal
// alpha*n + gamma < 1 and are rejected rather than dropped.
inline IntegerSet spectrum_image(const SpectrumParams& params, const IntegerSet& set) {
  if (set.empty()) throw DomainError("spectrum_image: input set is empty");
  std::vector<std::uint64_t> out;
  out.reserve(set.size());
  for (const std::uint64_t n : set.elements()) {
    const std::uint64_t v = params.apply(n);
    if (v == 0)
      throw RangeError("spectrum image leaves N: alpha*n + gamma < 1 at n = " + std::to_string(n));
    if (out.empty() || v != out.back()) out.push_back(v);
  }
  const std::uint64_t bound = out.back();  // map is nondecreasing
  return IntegerSet(std::move(out), bound);
}

// {n <= domain_bound : g(n) in target}. The bound is part of the certificate:
// the true preimage can be infinite when alpha < 1.
inline IntegerSet spectrum_preimage(const SpectrumParams& params, const IntegerSet& target,
                                    std::uint64_t domain_bound) {
  if (domain_bound == 0) throw DomainError("spectrum_preimage: domain bound must be positive");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= domain_bound; ++n) {
    if (target.contains(params.apply(n))) out.push_back(n);
  }
  return IntegerSet(std::move(out), domain_bound);
}

// {n <= bound : |alpha n - nearest integer| < threshold}: the integer-level
// analog of the vanishing locus of f_alpha.
inline IntegerSet near_zalpha_points(const RealValue& alpha, const Rational& threshold,
                                     std::uint64_t bound) {
  if (threshold <= Rational(0) || threshold > Rational(1, 2))
    throw DomainError("near_zalpha_points: threshold must lie in (0, 1/2]");
  if (bound == 0) throw DomainError("near_zalpha_points: bound must be positive");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    if (signed_frac_abs_compare(alpha, n, threshold) < 0) out.push_back(n);
  }
  return IntegerSet(std::move(out), bound);
}

}  // namespace beatty
