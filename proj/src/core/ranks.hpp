#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace factorcop {

//! 1-based ranks; equal values get consecutive ranks in input order.
std::vector<double> ordinal_ranks(std::span<const double> x, std::size_t* ties = nullptr);

//! 1-based ranks; equal values share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> x);

double pearson(std::span<const double> x, std::span<const double> y);

double spearman(std::span<const double> x, std::span<const double> y);

} // namespace factorcop
