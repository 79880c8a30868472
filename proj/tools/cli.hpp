#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace foveal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

/// Dispatches `filter`, `pyramid-dump`, `vote`, `partition`, `eval`,
/// `loss-check`, `prep` and `bench`. Results go to `out`, diagnostics to
/// `err`. Returns 0 on success, 1 on invalid flags or values, 2 on I/O
/// failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace foveal::cli
