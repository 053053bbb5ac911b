// Build an (n=15, k=6, r=3, delta=3) code over GF(256), store a message,
// lose two nodes in one group and rebuild them from that group alone.

#include <cstdio>

#include "lrc/lrc.hpp"

int main() {
  using namespace lrc;
  const Field f = Field::from_order(256);
  ConstructOptions opts;
  opts.seed = 2024;
  const Construction c = construct_almost_optimal(15, 6, 3, 3, f, opts);
  std::printf("code: n=%zu k=%zu d=%zu d_opt=%ld (%s), attempts=%llu\n", c.code.length(), c.code.dimension(), *c.report.measured_d,
              c.report.d_opt, to_string(*c.report.label), static_cast<unsigned long long>(c.report.attempts));

  const std::vector<Value> message{'l', 'o', 'c', 'a', 'l', '!'};
  const auto stored = c.code.encode(message);

  ReceivedWord rx(stored.begin(), stored.end());
  const auto& group = c.assignment.set_of(1);
  rx[group[0] - 1].reset();
  rx[group[1] - 1].reset();
  std::printf("lost nodes %zu and %zu; their group:", group[0], group[1]);
  for (std::size_t s : group) std::printf(" %zu", s);
  std::printf("\n");

  const auto repaired = repair(c.code, c.assignment, rx, 3);
  std::printf("repaired %s; read %zu symbols instead of k=%zu\n", repaired == stored ? "exactly" : "WRONG", group.size() - 2,
              c.code.dimension());

  // A third loss in the same group exceeds the local budget.
  rx[group[2] - 1].reset();
  try {
    repair(c.code, c.assignment, rx, 3);
  } catch (const Error& e) {
    std::printf("three losses in one group: %s\n", e.what());
  }
  return repaired == stored ? 0 : 1;
}
