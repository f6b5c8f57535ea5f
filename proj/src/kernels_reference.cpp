#include "kernel_elements.h"
#include "mcesr/kernels.h"
#include "mcesr/qp_no_short.h"

namespace mcesr::kernels::reference {

std::vector<double> average_cross_efficiency_grid(const MarketModel& model, const RateInterval& interval,
                                                  std::span<const double> rates) {
    const auto integrals = integrals_i1_i2(model, interval);
    std::vector<double> scores;
    scores.reserve(rates.size());
    for (double r : rates) {
        scores.push_back(cross_efficiency_closed_form(model, r, integrals));
    }
    return scores;
}

std::vector<double> quadrature_cross_efficiency_grid(const MarketModel& model, const RateInterval& interval,
                                                     std::span<const double> rates, int nodes) {
    std::vector<double> scores;
    scores.reserve(rates.size());
    for (double r : rates) {
        scores.push_back(average_cross_efficiency_quadrature(model, r, interval, nodes));
    }
    return scores;
}

std::vector<Portfolio> solve_no_short_grid(const MarketModel& model, std::span<const double> rates) {
    std::vector<Portfolio> portfolios;
    portfolios.reserve(rates.size());
    for (double r : rates) {
        portfolios.push_back(msr_no_short(model, r));
    }
    return portfolios;
}

std::vector<double> discrete_cross_efficiency(std::span<const double> returns, std::span<const double> risks,
                                              std::span<const double> rates) {
    const auto own = detail::own_sharpe(returns, risks, rates);
    std::vector<detail::PeerSums> sums;
    sums.reserve(own.size());
    for (std::size_t i = 0; i < own.size(); ++i) {
        sums.push_back(detail::peer_sums(i, returns, risks, rates, own));
    }
    detail::check_pairing(sums);
    std::vector<double> scores;
    scores.reserve(sums.size());
    for (const auto& s : sums) {
        scores.push_back(s.mean);
    }
    return scores;
}

}  // namespace mcesr::kernels::reference
