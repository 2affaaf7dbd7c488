#pragma once

#include <stdexcept>
#include <string>

namespace coordyn {

/// Bad or missing input data (unreadable files, malformed records, invalid
/// parameters). The command-line tool maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pipeline stage failed after its inputs were accepted. Carries the stage
/// name so the caller can report where the run stopped (exit code 2).
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& cause);

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace coordyn
