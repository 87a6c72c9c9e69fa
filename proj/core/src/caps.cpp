#include "wmm/caps.hpp"

#include <cstdlib>

namespace wmm {

std::optional<int> env_positive_int(const std::string& name) {
  const char* raw = std::getenv(name.c_str());
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value <= 0 || value > 1'000'000) return std::nullopt;
  return static_cast<int>(value);
}

Caps Caps::from_env() {
  Caps caps;
  if (auto v = env_positive_int("WMM_PERMUTATION_CAP")) caps.permutation_cap = *v;
  if (auto v = env_positive_int("WMM_INJECTION_CAP")) caps.injection_cap = *v;
  if (auto v = env_positive_int("WMM_WORD_CAP")) caps.word_cap = *v;
  if (auto v = env_positive_int("WMM_ORACLE_WORD_CAP")) caps.oracle_word_cap = *v;
  if (auto v = env_positive_int("WMM_POLARIZATION_CAP")) caps.polarization_cap = *v;
  if (auto v = env_positive_int("WMM_TRACE_DEGREE_CAP")) caps.trace_degree_cap = *v;
  return caps;
}

}  // namespace wmm
