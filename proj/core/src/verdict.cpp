#include "ksched/verdict.hpp"

namespace ksched {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::schedulable: return "schedulable";
    case Outcome::not_proven: return "not-proven";
    case Outcome::inapplicable: return "inapplicable";
  }
  return "?";
}

}  // namespace ksched
