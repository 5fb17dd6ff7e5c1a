#include "robusthalf/common.hpp"

namespace robusthalf {

namespace {
double g_tolerance = 1e-9;
}

double comparison_tolerance() { return g_tolerance; }

void set_comparison_tolerance(double tol) {
  if (!(tol > 0.0)) throw InvalidInput("comparison tolerance must be positive");
  g_tolerance = tol;
}

void require_finite(const Vector& v, std::string_view what) {
  if (v.size() == 0) throw InvalidInput(std::string(what) + ": empty vector");
  if (!v.allFinite()) throw InvalidInput(std::string(what) + ": non-finite coordinate");
}

void require_same_dim(const Vector& a, const Vector& b, std::string_view what) {
  if (a.size() != b.size())
    throw InvalidInput(std::string(what) + ": dimension mismatch (" +
                       std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t derive_seed(uint64_t seed, std::string_view tag, uint64_t index) {
  // FNV-1a over the tag, then two splitmix rounds to decorrelate streams.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(seed ^ h) + index);
}

}  // namespace robusthalf
