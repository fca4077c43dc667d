#ifndef CSRKIT_CLI_HPP
#define CSRKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace csrkit {

// Exit codes: 0 yes/finite/uniform/constant, 1 no/infinite/not-uniform,
// 2 unknown, 64 usage error, 65 malformed input.
inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitMalformed = 65;

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace csrkit

#endif  // CSRKIT_CLI_HPP
