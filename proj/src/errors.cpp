#include "ohm/errors.hpp"

namespace ohm {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::duplicate_time: return "DuplicateTime";
    case Errc::bad_window: return "BadWindow";
    case Errc::bad_preference: return "BadPreference";
    case Errc::duplicate_id: return "DuplicateId";
    case Errc::syntax: return "SyntaxError";
    case Errc::empty_choice_set: return "EmptyChoiceSet";
    case Errc::not_prefix_stable: return "NotPrefixStable";
    case Errc::not_progress_preserving: return "NotProgressPreserving";
    case Errc::bad_scheduling: return "BadScheduling";
    case Errc::too_large: return "TooLarge";
    case Errc::not_compatible: return "NotCompatible";
    case Errc::not_safe: return "NotSafe";
  }
  return "UnknownError";
}

}  // namespace ohm
