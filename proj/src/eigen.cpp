#include "gcorner/eigen.hpp"

#include "gcorner/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gcorner {

namespace {

constexpr int kMaxSweeps = 60;

/// Cyclic Jacobi on a row-major copy. vectors may be null.
void jacobi_in_place(std::vector<double>& a, std::size_t n, std::vector<double>* vectors) {
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
    if (vectors != nullptr) {
        vectors->assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            (*vectors)[i * n + i] = 1.0;
        }
    }

    double frob = 0.0;
    for (double v : a) {
        frob += v * v;
    }
    if (frob == 0.0) {
        return;
    }
    const double eps2 = 1e-34 * frob;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += at(p, q) * at(p, q);
            }
        }
        if (off <= eps2) {
            break;
        }

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double app = at(p, p);
                const double aqq = at(q, q);
                const double g = 100.0 * std::abs(apq);
                // Once past the first sweeps, an element below the diagonals'
                // resolution is zeroed instead of rotated.
                if (sweep > 3 && std::abs(app) + g == std::abs(app) &&
                    std::abs(aqq) + g == std::abs(aqq)) {
                    at(p, q) = 0.0;
                    at(q, p) = 0.0;
                    continue;
                }

                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) {
                        t = -t;
                    }
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;

                if (vectors != nullptr) {
                    auto& v = *vectors;
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v[k * n + p];
                        const double vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}

void check_finite(const SymmetricMatrix& m) {
    const auto& d = m.data();
    if (!std::all_of(d.begin(), d.end(), [](double v) { return std::isfinite(v); })) {
        throw NumericError("structure tensor has non-finite entries");
    }
}

}  // namespace

EigenDecomposition jacobi_eigen(const SymmetricMatrix& m) {
    check_finite(m);
    const std::size_t n = m.order();
    std::vector<double> a = m.data();
    std::vector<double> vectors;
    jacobi_in_place(a, n, &vectors);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return a[l * n + l] > a[r * n + r]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.values[c] = a[src * n + src];
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors[r * n + c] = vectors[r * n + src];
        }
    }
    return out;
}

std::vector<double> eigenvalues(const SymmetricMatrix& m) {
    check_finite(m);
    const std::size_t n = m.order();
    std::vector<double> a = m.data();
    jacobi_in_place(a, n, nullptr);

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = a[i * n + i];
    }
    std::sort(values.begin(), values.end(), std::greater<>());

    const double tolerance = 1e-6 * std::abs(m.trace());
    for (double& v : values) {
        if (v < 0.0) {
            if (v < -tolerance) {
                throw NumericError("structure tensor is not positive semidefinite (eigenvalue " +
                                   std::to_string(v) + ")");
            }
            v = 0.0;
        }
    }
    return values;
}

}  // namespace gcorner
