#include "lambert/solution.hpp"

namespace lambert {

std::string_view to_string(ArcKind kind) noexcept {
  switch (kind) {
    case ArcKind::DirectSimple: return "direct";
    case ArcKind::IndirectSimple: return "indirect";
    case ArcKind::MultiRev: return "multirev";
  }
  return "unknown";
}

std::string_view to_string(Tail tail) noexcept {
  return tail == Tail::Direct ? "direct" : "indirect";
}

}  // namespace lambert
