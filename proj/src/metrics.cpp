#include "hdsaug/metrics.hpp"

#include "hdsaug/errors.hpp"

#include <cmath>

namespace hdsaug {

MetricSet metrics(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    if (y_true.empty() || y_true.size() != y_pred.size())
        throw ValidationError("metrics: prediction vectors must be non-empty and equal length");

    const double n = static_cast<double>(y_true.size());
    double abs_sum = 0.0, sq_sum = 0.0, mean_true = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double e = y_pred[i] - y_true[i];
        abs_sum += std::abs(e);
        sq_sum += e * e;
        mean_true += y_true[i];
    }
    mean_true /= n;

    double ss_tot = 0.0;
    for (double t : y_true) ss_tot += (t - mean_true) * (t - mean_true);

    MetricSet m;
    m.mae = abs_sum / n;
    m.rmse = std::sqrt(sq_sum / n);
    if (ss_tot > 0.0) {
        m.r2 = 1.0 - sq_sum / ss_tot;
    } else {
        m.r2 = std::nan("");
        m.r2_defined = false;
    }
    return m;
}

StratifiedMae stratified_mae(const std::vector<double>& y_true, const std::vector<double>& y_pred,
                             int low_min, int low_max, int high_max) {
    if (y_true.empty() || y_true.size() != y_pred.size())
        throw ValidationError("stratified_mae: prediction vectors must be non-empty and equal length");

    double low_sum = 0.0, high_sum = 0.0;
    std::size_t low_n = 0, high_n = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const double err = std::abs(y_pred[i] - y_true[i]);
        if (y_true[i] >= low_min && y_true[i] <= low_max) {
            low_sum += err;
            ++low_n;
        } else if (y_true[i] > low_max && y_true[i] <= high_max) {
            high_sum += err;
            ++high_n;
        }
    }
    StratifiedMae s;
    if (low_n > 0) s.low = low_sum / static_cast<double>(low_n);
    if (high_n > 0) s.high = high_sum / static_cast<double>(high_n);
    return s;
}

} // namespace hdsaug
