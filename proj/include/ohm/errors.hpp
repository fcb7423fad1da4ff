#pragma once

#include <stdexcept>
#include <string>

namespace ohm {

enum class Errc {
  duplicate_time,
  bad_window,
  bad_preference,
  duplicate_id,
  syntax,
  empty_choice_set,
  not_prefix_stable,
  not_progress_preserving,
  bad_scheduling,
  too_large,
  not_compatible,
  not_safe,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace ohm
