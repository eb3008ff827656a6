#include "cyclefree/rng.hpp"

namespace cyclefree {

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

Rng::Rng(uint64_t seed, std::string_view label)
    : seed_(seed), label_(label), key_(mix64(seed ^ mix64(fnv1a(label)))) {}

uint64_t Rng::at(uint64_t index) const {
  return mix64(key_ + mix64(index + 0x9e3779b97f4a7c15ULL));
}

double Rng::uniform_at(uint64_t index) const {
  return static_cast<double>(at(index) >> 11) * 0x1.0p-53;
}

uint64_t Rng::next() { return at(counter_++); }

double Rng::uniform() { return uniform_at(counter_++); }

uint64_t Rng::below(uint64_t bound) {
  // rejection keeps the result exactly uniform and platform independent
  uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
  for (;;) {
    uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

Rng Rng::split(std::string_view sublabel) const {
  std::string l = label_;
  l += '/';
  l += sublabel;
  return Rng(seed_, l);
}

}  // namespace cyclefree
