#pragma once

#include <optional>

#include "addbo/decomposition.hpp"

namespace addbo {

/// Fraction of dimension pairs on which two decompositions agree (both
/// together or both apart). Throws InputError when D < 2 or lengths differ.
double rand_index(const Decomposition& z, const Decomposition& truth);

/// Among pairs grouped together in `truth`, the fraction also together in
/// `z`. nullopt when `truth` has no such pair.
std::optional<double> grouped_together_rate(const Decomposition& z, const Decomposition& truth);

/// Among pairs separated in `truth`, the fraction also separated in `z`.
/// nullopt when `truth` has no such pair.
std::optional<double> separated_rate(const Decomposition& z, const Decomposition& truth);

}  // namespace addbo
