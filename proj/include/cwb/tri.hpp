#pragma once
#include <string>

namespace cwb {

// Three-valued verdicts. Unknown means a bound was hit, never a refutation.
enum class Tri { False, True, Unknown };

inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }

inline Tri tri_not(Tri a) {
  if (a == Tri::Unknown) return a;
  return a == Tri::True ? Tri::False : Tri::True;
}

inline Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

inline Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

inline Tri tri_imp(Tri a, Tri b) { return tri_or(tri_not(a), b); }

inline Tri tri_iff(Tri a, Tri b) {
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return tri(a == b);
}

inline std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    default: return "unknown";
  }
}

}  // namespace cwb
