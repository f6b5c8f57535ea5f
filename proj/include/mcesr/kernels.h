#pragma once

#include <span>
#include <vector>

#include "mcesr/cross_efficiency.h"
#include "mcesr/frontier.h"
#include "mcesr/market_model.h"

/// Data-parallel batch kernels. Every kernel in mcesr::kernels is OpenMP
/// parallel; mcesr::kernels::reference holds the serial version of each,
/// kept for testing and benchmarking. Both evaluate the same per-element
/// function in the same order within an element, so outputs are bitwise
/// identical regardless of thread count.
namespace mcesr::kernels {

/// `count` evenly spaced values from first to last inclusive.
std::vector<double> linspace(double first, double last, int count);

/// Closed-form average cross-efficiency over `interval` at each rate.
std::vector<double> average_cross_efficiency_grid(const MarketModel& model, const RateInterval& interval,
                                                  std::span<const double> rates);

/// Simpson-quadrature average cross-efficiency at each rate.
std::vector<double> quadrature_cross_efficiency_grid(const MarketModel& model, const RateInterval& interval,
                                                     std::span<const double> rates, int nodes = 201);

/// Long-only MSR portfolio at each rate. The first failing rate's error is rethrown.
std::vector<Portfolio> solve_no_short_grid(const MarketModel& model, std::span<const double> rates);

/// Mean peer-rated efficiency of each (return, risk, rate) triple; see
/// mcesr::discrete_cross_efficiency for the pairing guard.
std::vector<double> discrete_cross_efficiency(std::span<const double> returns, std::span<const double> risks,
                                              std::span<const double> rates);

namespace reference {

std::vector<double> average_cross_efficiency_grid(const MarketModel& model, const RateInterval& interval,
                                                  std::span<const double> rates);

std::vector<double> quadrature_cross_efficiency_grid(const MarketModel& model, const RateInterval& interval,
                                                     std::span<const double> rates, int nodes = 201);

std::vector<Portfolio> solve_no_short_grid(const MarketModel& model, std::span<const double> rates);

std::vector<double> discrete_cross_efficiency(std::span<const double> returns, std::span<const double> risks,
                                              std::span<const double> rates);

}  // namespace reference

}  // namespace mcesr::kernels
