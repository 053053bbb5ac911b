// Parameters of the binary quasi-uniform families for small i.

#include <cstdio>

#include "lrc/lrc.hpp"

int main() {
  using namespace lrc;
  std::printf("%-6s %2s %4s %4s %3s %3s %6s %s\n", "family", "i", "n", "k", "d", "r", "bound", "optimal");
  for (Family fam : {Family::kC1_33, Family::kC2_33, Family::kC1_43}) {
    for (std::size_t i = 1; i <= 3; ++i) {
      const auto spec = family_build(fam, i);
      const auto loc = family_locality(spec, i);
      if (!loc) continue;
      const auto v = quasi_verify(spec, *loc);
      std::printf("%-6s %2zu %4zu %4zu %3zu %3zu %6ld %s\n", to_string(fam), i, v.params.n, v.params.log2_size / 2, v.params.d, v.r,
                  v.bound.value_or(-1), v.optimal ? "yes" : "no");
    }
  }
}
