#pragma once

#include "addbo/acquisition.hpp"
#include "addbo/domain.hpp"
#include "addbo/gibbs.hpp"
#include "addbo/kernel.hpp"
#include "addbo/run.hpp"

namespace addbo {

/// Add-GP-UCB: one point per round from per-group UCB maximizers. The
/// decomposition is (re)learned at rounds 1, N_cyc + 1, 2 N_cyc + 1, ...
/// Objective failures stop the run and return it with truncated = true.
RunResult run_sequential_bo(const Objective& objective, const BoxDomain& domain, const RunConfig& run,
                            const GibbsConfig& gibbs, const KernelSpec& spec,
                            const BetaSchedule& schedule);

}  // namespace addbo
