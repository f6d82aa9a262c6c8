#pragma once

#include <ostream>

namespace shiftlab::cli
{

// Exit codes: 0 definite result, 2 undecidable at the horizon, 1 input or usage error.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace shiftlab::cli
