#include "pampa/timeint.hpp"

namespace pampa {

IntegratorKind parse_integrator(std::string_view name) {
  if (name == "forward_euler" || name == "euler") return IntegratorKind::forward_euler;
  if (name == "ssp_rk3" || name == "rk3") return IntegratorKind::ssp_rk3;
  if (name == "ssp_ms3" || name == "ms3") return IntegratorKind::ssp_ms3;
  throw ConfigError("unknown integrator '" + std::string(name) + "'");
}

std::string to_string(IntegratorKind kind) {
  switch (kind) {
    case IntegratorKind::forward_euler: return "forward_euler";
    case IntegratorKind::ssp_rk3: return "ssp_rk3";
    case IntegratorKind::ssp_ms3: return "ssp_ms3";
  }
  return "?";
}

}  // namespace pampa
