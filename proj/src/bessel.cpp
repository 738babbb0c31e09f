#include "recteig/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace recteig {

namespace {

double bessel_j(int order, double x)
{
    return std::cyl_bessel_j(static_cast<double>(order), x);
}

double bisect(int order, double lo, double hi)
{
    double flo = bessel_j(order, lo);
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j(order, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// First `count` positive zeros of J_order by a sign-change scan. Zeros are
// spaced by more than pi/2 beyond j_{k,1} > k, so a step of 0.1 cannot skip one.
std::vector<double> first_zeros(int order, int count)
{
    std::vector<double> zeros;
    constexpr double step = 0.1;
    double x = std::max(0.5, static_cast<double>(order));
    double fx = bessel_j(order, x);
    while (static_cast<int>(zeros.size()) < count) {
        const double next = x + step;
        const double fn = bessel_j(order, next);
        if (fn == 0.0) {
            zeros.push_back(next);
            x = next + step;
            fx = bessel_j(order, x);
            continue;
        }
        if ((fx < 0.0) != (fn < 0.0)) zeros.push_back(bisect(order, x, next));
        x = next;
        fx = fn;
    }
    return zeros;
}

}  // namespace

double bessel_zero(int order, int index)
{
    if (order < 0 || index < 1) throw std::invalid_argument("bessel_zero: need order >= 0 and index >= 1");
    return first_zeros(order, index).back();
}

ReferenceSpectrum bessel_disk_reference(std::size_t n_modes)
{
    if (n_modes < 1) throw std::invalid_argument("bessel_disk_reference: need n_modes >= 1");
    const int span = static_cast<int>(n_modes) + 1;

    // j_{k,1} increases with k and j_{0,s} with s, so taking k, s <= n_modes
    // covers the smallest n_modes values.
    std::vector<double> values;
    for (int k = 0; k <= span; ++k) {
        for (double z : first_zeros(k, span)) {
            const double v = z * z;
            values.push_back(v);
            if (k > 0) values.push_back(v);
        }
    }
    std::sort(values.begin(), values.end());
    values.resize(n_modes);

    ReferenceSpectrum ref;
    ref.values = std::move(values);
    ref.provenance.assign(ref.values.size(), Provenance::bessel);
    ref.note = "squared zeros of J_k, k >= 1 doubled";
    return ref;
}

}  // namespace recteig
