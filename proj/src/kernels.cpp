#include "mcesr/kernels.h"

#include <exception>

#include "kernel_elements.h"
#include "mcesr/error.h"
#include "mcesr/qp_no_short.h"

namespace mcesr::kernels {

std::vector<double> linspace(double first, double last, int count) {
    if (count < 1) {
        throw Error(ErrorCode::InvalidInput, "linspace needs count >= 1");
    }
    std::vector<double> out(static_cast<std::size_t>(count));
    if (count == 1) {
        out[0] = first;
        return out;
    }
    const double step = (last - first) / (count - 1);
    for (int k = 0; k < count; ++k) {
        out[static_cast<std::size_t>(k)] = first + k * step;
    }
    out.back() = last;
    return out;
}

std::vector<double> average_cross_efficiency_grid(const MarketModel& model, const RateInterval& interval,
                                                  std::span<const double> rates) {
    const auto integrals = integrals_i1_i2(model, interval);
    const auto count = static_cast<std::ptrdiff_t>(rates.size());
    std::vector<double> scores(rates.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        scores[static_cast<std::size_t>(k)] =
            cross_efficiency_closed_form(model, rates[static_cast<std::size_t>(k)], integrals);
    }
    return scores;
}

std::vector<double> quadrature_cross_efficiency_grid(const MarketModel& model, const RateInterval& interval,
                                                     std::span<const double> rates, int nodes) {
    for (double r : rates) {
        require_admissible_rate(model, r);
    }
    const auto count = static_cast<std::ptrdiff_t>(rates.size());
    std::vector<double> scores(rates.size());
    std::vector<std::exception_ptr> errors(rates.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(k);
        try {
            scores[i] = average_cross_efficiency_quadrature(model, rates[i], interval, nodes);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return scores;
}

std::vector<Portfolio> solve_no_short_grid(const MarketModel& model, std::span<const double> rates) {
    const auto count = static_cast<std::ptrdiff_t>(rates.size());
    std::vector<Portfolio> portfolios(rates.size());
    std::vector<std::exception_ptr> errors(rates.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(k);
        try {
            portfolios[i] = msr_no_short(model, rates[i]);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return portfolios;
}

std::vector<double> discrete_cross_efficiency(std::span<const double> returns, std::span<const double> risks,
                                              std::span<const double> rates) {
    const auto own = detail::own_sharpe(returns, risks, rates);
    const auto count = static_cast<std::ptrdiff_t>(own.size());
    std::vector<detail::PeerSums> sums(own.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(k);
        sums[i] = detail::peer_sums(i, returns, risks, rates, own);
    }
    detail::check_pairing(sums);
    std::vector<double> scores(own.size());
    for (std::size_t i = 0; i < sums.size(); ++i) {
        scores[i] = sums[i].mean;
    }
    return scores;
}

}  // namespace mcesr::kernels
