// Command-line front end, callable in-process for tests.
// Exit codes: 0 all checks pass, 1 check failure or I/O error, 2 usage error.

#pragma once

namespace kstab {

int cli_main(int argc, const char* const* argv);

}  // namespace kstab
