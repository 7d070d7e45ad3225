#include "workbench/linalg.hpp"

#include <cstddef>
#include <utility>

namespace workbench {

namespace {

void require_square(const IntMatrix& m) {
    for (const auto& row : m) {
        if (row.size() != m.size()) throw std::invalid_argument("matrix is not square");
    }
}

// Fraction-free forward elimination (Bareiss). Operates in place on an
// n x cols matrix whose first n columns are the system; extra columns ride
// along as augmentation. Returns the sign from row swaps, or 0 if a zero
// pivot column is found (singular system).
int bareiss_forward(std::vector<std::vector<Int>>& a, std::size_t n) {
    int sign = 1;
    Int prev = 1;
    const std::size_t cols = n == 0 ? 0 : a[0].size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && a[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < cols; ++j) {
                Int t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign;
}

}  // namespace

Int determinant_exact(IntMatrix m) {
    require_square(m);
    const std::size_t n = m.size();
    if (n == 0) return 1;
    const int sign = bareiss_forward(m, n);
    if (sign == 0) return 0;
    return sign > 0 ? m[n - 1][n - 1] : Int(-m[n - 1][n - 1]);
}

std::vector<Rat> solve_exact(IntMatrix m, const std::vector<Rat>& b) {
    require_square(m);
    const std::size_t n = m.size();
    if (b.size() != n) throw std::invalid_argument("right-hand side has wrong length");
    if (n == 0) return {};

    // Clear denominators so the augmented column stays integral.
    Int scale = 1;
    for (const auto& r : b) {
        Rat c = r;
        c.canonicalize();
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den().get_mpz_t());
    }
    for (std::size_t i = 0; i < n; ++i) {
        Rat scaled = b[i] * scale;
        scaled.canonicalize();
        m[i].push_back(scaled.get_num());
    }

    if (bareiss_forward(m, n) == 0) throw std::domain_error("singular matrix");

    std::vector<Rat> x(n, Rat(0));
    for (std::size_t ii = n; ii-- > 0;) {
        Rat acc(m[ii][n]);
        for (std::size_t j = ii + 1; j < n; ++j) acc -= Rat(m[ii][j]) * x[j];
        x[ii] = acc / Rat(m[ii][ii]);
        x[ii].canonicalize();
    }
    for (auto& xi : x) {
        xi /= scale;
        xi.canonicalize();
    }
    return x;
}

bool is_negative_definite_matrix(const IntMatrix& m) {
    require_square(m);
    const std::size_t n = m.size();
    for (std::size_t k = 1; k <= n; ++k) {
        IntMatrix lead(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) lead[i][j] = m[i][j];
        const Int d = determinant_exact(std::move(lead));
        if (k % 2 == 1 ? d >= 0 : d <= 0) return false;
    }
    return true;
}

}  // namespace workbench
