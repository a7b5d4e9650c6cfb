#pragma once
#include "bmhd/config.hpp"

namespace bmhd {

// Dispatch a validated run description to its experiment driver.  Every
// driver writes a summary JSON plus its CSV/estimate files under the run's
// hash prefix and returns 0 exactly when its assertions hold.
int run_experiment(const RunConfig& cfg);

}  // namespace bmhd
