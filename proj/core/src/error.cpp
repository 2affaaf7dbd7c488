#include "coordyn/error.hpp"

namespace coordyn {

StageError::StageError(std::string stage, const std::string& cause)
    : std::runtime_error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}

}  // namespace coordyn
