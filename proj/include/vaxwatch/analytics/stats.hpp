#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace vaxwatch::analytics {

/// Correlation is undefined when either input has no variation.
class UndefinedCorrelation : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct Correlation {
    double coefficient = 0.0;  // r or rho, in [-1, 1]
    double p_value = 1.0;      // two-sided, in [0, 1]
    std::size_t n = 0;
};

/// Mid-ranks (1-based, ties get the average of their rank block).
std::vector<double> mid_ranks(std::span<const double> values);

/// Pearson correlation with the two-sided t-approximation p-value
/// (t = r*sqrt((n-2)/(1-r^2)), n-2 degrees of freedom).
/// Throws std::invalid_argument for mismatched lengths or n < 3 and
/// UndefinedCorrelation when either vector is constant.
Correlation pearson(std::span<const double> xs, std::span<const double> ys);

/// Spearman rank correlation: Pearson over mid-ranks. The p-value is the
/// exact two-sided permutation probability for n <= 8 and the
/// t-approximation above otherwise. Errors as pearson.
Correlation spearman(std::span<const double> xs, std::span<const double> ys);

/// Two-sided tail probability of Student's t with `dof` degrees of freedom.
double student_t_two_sided_p(double t, double dof);

/// Largest sample size for which spearman() computes the exact permutation
/// p-value.
inline constexpr std::size_t kExactPermutationLimit = 8;

}  // namespace vaxwatch::analytics
