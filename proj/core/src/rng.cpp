#include "qarp/rng.hpp"

namespace qarp {

namespace {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

uint64_t mix_seed(uint64_t seed, std::initializer_list<uint64_t> salt) {
  uint64_t s = splitmix64(seed);
  for (uint64_t w : salt) s = splitmix64(s ^ (w + 0x9e3779b97f4a7c15ULL));
  return s;
}

}  // namespace qarp
