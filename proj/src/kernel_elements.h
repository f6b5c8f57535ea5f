#pragma once

// Per-element bodies shared by the parallel and reference kernels.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mcesr/error.h"

namespace mcesr::kernels::detail {

struct PeerSums {
    double mean = 0.0;
    double max_summand = 0.0;
};

/// Own Sharpe ratio (r_j - rf_j)/sigma_j of every peer; throws InvalidPairing
/// when one is not positive.
inline std::vector<double> own_sharpe(std::span<const double> returns, std::span<const double> risks,
                                      std::span<const double> rates) {
    if (returns.size() != risks.size() || returns.size() != rates.size() || returns.empty()) {
        throw Error(ErrorCode::InvalidInput, "returns, risks and rates must have one entry per portfolio");
    }
    std::vector<double> own(returns.size());
    for (std::size_t j = 0; j < returns.size(); ++j) {
        own[j] = (returns[j] - rates[j]) / risks[j];
        if (!(own[j] > 0.0)) {
            throw Error(ErrorCode::InvalidPairing,
                        "portfolio " + std::to_string(j) + " has a non-positive Sharpe ratio at its own rate");
        }
    }
    return own;
}

inline PeerSums peer_sums(std::size_t i, std::span<const double> returns, std::span<const double> risks,
                          std::span<const double> rates, const std::vector<double>& own) {
    PeerSums s;
    double sum = 0.0;
    for (std::size_t j = 0; j < own.size(); ++j) {
        const double summand = ((returns[i] - rates[j]) / risks[i]) / own[j];
        sum += summand;
        s.max_summand = std::max(s.max_summand, summand);
    }
    s.mean = sum / static_cast<double>(own.size());
    return s;
}

inline void check_pairing(const std::vector<PeerSums>& sums) {
    for (std::size_t i = 0; i < sums.size(); ++i) {
        if (sums[i].max_summand > 1.0 + 1e-8) {
            throw Error(ErrorCode::InvalidPairing,
                        "portfolio " + std::to_string(i) +
                            " beats a peer at the peer's own rate; portfolios are not rate-optimal");
        }
    }
}

}  // namespace mcesr::kernels::detail
