// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace mimo {

// File-system and file-format failures, kept distinct from argument errors
// so the CLI can map them to its I/O exit code.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mimo
