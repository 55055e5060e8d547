#pragma once

namespace sfcusp {
namespace cli {

// Full command-line front end; returns the process exit status
// (0 ok, 1 computation error, 2 usage error).  Exposed so tests can drive
// the tool in-process.
int run(int argc, const char* const* argv);

} // namespace cli
} // namespace sfcusp
