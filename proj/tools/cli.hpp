#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace renyi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs one invocation. `args` excludes the program name. `env_seed` stands in
/// for the RENYI_SEED environment variable.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& env_seed = std::nullopt);

}  // namespace renyi::cli
