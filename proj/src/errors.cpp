#include "lspia/errors.hpp"

#include <cstdio>

namespace lspia {

ParseError::ParseError(const std::string& path, long line_no, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what), line(line_no) {}

void warn(const std::string& message) {
    std::fprintf(stderr, "lspia: warning: %s\n", message.c_str());
}

}  // namespace lspia
