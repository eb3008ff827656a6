#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cyclefree {

uint64_t fnv1a(std::string_view s);
uint64_t mix64(uint64_t x);

// Counter-based stream: draw i depends only on (seed, label, i).
class Rng {
 public:
  Rng(uint64_t seed, std::string_view label);

  uint64_t at(uint64_t index) const;
  double uniform_at(uint64_t index) const;  // in [0, 1)

  uint64_t next();
  double uniform();
  uint64_t below(uint64_t bound);  // uniform on [0, bound), bound > 0

  Rng split(std::string_view sublabel) const;

  uint64_t seed() const { return seed_; }
  const std::string& label() const { return label_; }
  uint64_t position() const { return counter_; }

 private:
  uint64_t seed_;
  std::string label_;
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace cyclefree
