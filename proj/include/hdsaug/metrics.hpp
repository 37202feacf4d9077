#pragma once

#include <optional>
#include <vector>

namespace hdsaug {

struct MetricSet {
    double mae = 0.0;
    double rmse = 0.0;
    double r2 = 0.0;
    bool r2_defined = true; // false when y_true has zero variance
};

// Pooled metrics over a prediction set. R^2 uses the total sum of squares
// about the mean of y_true; with zero-variance targets it is flagged
// undefined rather than reported as a number.
MetricSet metrics(const std::vector<double>& y_true, const std::vector<double>& y_pred);

// MAE split by target band: low = [low_min, low_max], high = (low_max, ...].
// An empty stratum is absent, not zero.
struct StratifiedMae {
    std::optional<double> low;
    std::optional<double> high;
};

StratifiedMae stratified_mae(const std::vector<double>& y_true, const std::vector<double>& y_pred,
                             int low_min = 22, int low_max = 27, int high_max = 30);

} // namespace hdsaug
