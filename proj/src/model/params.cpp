#include "hypertree/params.hpp"

#include <string>

#include "hypertree/error.hpp"

namespace hypertree {

std::vector<std::string> ModelParams::failures() const {
  std::vector<std::string> out;
  if (!rn_divisible) {
    out.push_back("d1: s=" + std::to_string(s) + " does not divide rn=" +
                  std::to_string(points()));
  }
  if (!tree_divisible) {
    out.push_back("d2: s-1=" + std::to_string(s - 1) + " does not divide n-1=" +
                  std::to_string(n - 1));
  }
  return out;
}

ModelParams validate_params(int r, int s, std::int64_t n) {
  if (r < 2) throw ValidationError("r must be at least 2, got " + std::to_string(r));
  if (s < 2) throw ValidationError("s must be at least 2, got " + std::to_string(s));
  if (n < 1) throw ValidationError("n must be positive, got " + std::to_string(n));
  ModelParams p;
  p.r = r;
  p.s = s;
  p.n = n;
  p.rn_divisible = (static_cast<std::int64_t>(r) * n) % s == 0;
  p.tree_divisible = (n - 1) % (s - 1) == 0;
  return p;
}

void require_configurable(const ModelParams& p) {
  if (!p.rn_divisible) {
    throw ValidationError("no configuration exists: " + p.failures().front());
  }
}

void require_admissible(const ModelParams& p) {
  if (!p.admissible()) {
    std::string msg = "n=" + std::to_string(p.n) + " is not in N_(r,s):";
    for (const auto& f : p.failures()) msg += " " + f;
    throw ValidationError(msg);
  }
}

std::vector<std::int64_t> admissible_ladder(int r, int s, std::size_t count,
                                            std::int64_t start) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = start < 1 ? 1 : start; out.size() < count; ++n) {
    if (validate_params(r, s, n).admissible()) out.push_back(n);
  }
  return out;
}

}  // namespace hypertree
