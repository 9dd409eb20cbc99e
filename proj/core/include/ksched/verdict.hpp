#pragma once

#include <limits>

namespace ksched {

/// Outcome of a sufficient schedulability test. A sufficient test can
/// prove schedulability but never the opposite, so the negative result
/// is "not proven". "inapplicable" means a precondition of the test
/// failed and the bound was not evaluated.
enum class Outcome { schedulable, not_proven, inapplicable };

const char* to_string(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::not_proven;
  /// The evaluated right-hand side (or witness value) of the binding
  /// condition; NaN when the test was inapplicable.
  double bound = std::numeric_limits<double>::quiet_NaN();

  bool ok() const { return outcome == Outcome::schedulable; }

  static Verdict schedulable(double bound) {
    return Verdict{Outcome::schedulable, bound};
  }
  static Verdict not_proven(double bound) {
    return Verdict{Outcome::not_proven, bound};
  }
  static Verdict inapplicable() { return Verdict{Outcome::inapplicable}; }
};

}  // namespace ksched
