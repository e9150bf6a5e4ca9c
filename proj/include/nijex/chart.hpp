#ifndef NIJEX_CHART_HPP
#define NIJEX_CHART_HPP

#include <array>
#include <stdexcept>
#include <vector>

namespace nijex {

/* A single local chart of an even-dimensional manifold: the coordinate
 * count, the sampling box, and the default validation tolerance. */
class Chart {
public:
    explicit Chart(int n,
                   std::vector<std::array<double, 2>> box = {},
                   double tolerance = 1e-10)
        : n_(n), box_(std::move(box)), tol_(tolerance) {
        if (n < 2 || n % 2 != 0)
            throw std::invalid_argument("chart dimension must be even and >= 2");
        if (box_.empty()) box_.assign(std::size_t(n), {-1.0, 1.0});
        if (int(box_.size()) != n)
            throw std::invalid_argument("sampling box must have one interval per coordinate");
        for (const auto& iv : box_)
            if (!(iv[0] < iv[1]))
                throw std::invalid_argument("sampling box interval must be nonempty");
        if (!(tol_ > 0)) throw std::invalid_argument("tolerance must be positive");
    }

    int dim() const { return n_; }
    const std::vector<std::array<double, 2>>& box() const { return box_; }
    double tolerance() const { return tol_; }

    bool contains(const std::vector<double>& point) const {
        if (int(point.size()) != n_) return false;
        for (int i = 0; i < n_; ++i)
            if (point[std::size_t(i)] < box_[std::size_t(i)][0] ||
                point[std::size_t(i)] > box_[std::size_t(i)][1])
                return false;
        return true;
    }

private:
    int n_;
    std::vector<std::array<double, 2>> box_;
    double tol_;
};

}  // namespace nijex

#endif
