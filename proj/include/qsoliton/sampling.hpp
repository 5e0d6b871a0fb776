// Deterministic low-discrepancy point sampling (Halton sequence).  The seed
// only shifts the starting index, so a (seed, count) pair always reproduces
// the same point set.

#ifndef QSOLITON_SAMPLING_HPP
#define QSOLITON_SAMPLING_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "linalg.hpp"

namespace qsoliton {

inline double halton(std::uint64_t index, int base) {
  double f = 1.0, r = 0.0;
  while (index > 0) {
    f /= double(base);
    r += f * double(index % base);
    index /= base;
  }
  return r;
}

struct Box {
  std::vector<double> lo, hi;
  int dim() const { return int(lo.size()); }
  bool contains(const Vec& p) const {
    for (size_t i = 0; i < lo.size(); ++i)
      if (p[i] < lo[i] || p[i] > hi[i]) return false;
    return true;
  }
};

class HaltonSampler {
 public:
  HaltonSampler(const Box& box, std::uint64_t seed)
      : box_(box), index_(17 + seed * 7919) {}

  Vec next() {
    static const int bases[kMaxDim] = {2, 3, 5, 7};
    Vec p(box_.dim());
    for (int i = 0; i < box_.dim(); ++i)
      p[i] = box_.lo[i] + (box_.hi[i] - box_.lo[i]) * halton(index_, bases[i]);
    ++index_;
    return p;
  }

  // Next point accepted by `pred`; deterministic rejection scan.
  Vec next(const std::function<bool(const Vec&)>& pred) {
    for (int tries = 0; tries < 100000; ++tries) {
      Vec p = next();
      if (!pred || pred(p)) return p;
    }
    throw std::runtime_error("HaltonSampler: domain predicate rejects all points");
  }

 private:
  Box box_;
  std::uint64_t index_;
};

}  // namespace qsoliton

#endif  // QSOLITON_SAMPLING_HPP
