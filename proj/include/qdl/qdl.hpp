#pragma once

// Umbrella header for the library. report_io.hpp is separate because it
// needs nlohmann/json.

#include "qdl/errors.hpp"
#include "qdl/numerics.hpp"
#include "qdl/lca.hpp"
#include "qdl/qseries.hpp"
#include "qdl/qdilog.hpp"
#include "qdl/transforms.hpp"
#include "qdl/weights.hpp"
#include "qdl/verify.hpp"
