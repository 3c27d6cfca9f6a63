#include "c2flow/errors.hpp"

namespace c2flow {

std::string DivergenceError::make_message(const std::string& field, long step) {
    std::string msg = "non-finite value in " + field;
    if (step >= 0)
        msg += " at step " + std::to_string(step);
    return msg;
}

} // namespace c2flow
