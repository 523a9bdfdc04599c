#pragma once

namespace nonlocal {

// Execution mode for the data-parallel kernels. The serial path is the
// reference implementation; the parallel path uses OpenMP and must produce
// the same results (bitwise for the matvec, whose rows are independent).
enum class Exec { Serial, Parallel };

}  // namespace nonlocal
