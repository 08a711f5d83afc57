#pragma once

namespace eod {

/// Selects between the serial reference kernels and their OpenMP versions.
/// Both produce identical results; the serial path is kept for testing.
enum class Execution { Serial, Parallel };

}  // namespace eod
