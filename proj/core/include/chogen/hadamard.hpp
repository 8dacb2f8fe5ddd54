#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chogen/design.hpp"

namespace chogen {

/// A +-1 matrix H of order v with H H' = v I, checked exactly on construction.
class HadamardMatrix {
public:
    /// Throws NotHadamard unless `entries` (row-major, v*v) is a Hadamard matrix.
    HadamardMatrix(int order, std::vector<std::int8_t> entries);

    int order() const noexcept { return order_; }
    int at(int row, int col) const { return entries_[static_cast<std::size_t>(row * order_ + col)]; }
    std::span<const std::int8_t> entries() const noexcept { return entries_; }
    bool is_normalized() const;

    bool operator==(const HadamardMatrix&) const = default;

private:
    int order_;
    std::vector<std::int8_t> entries_;
};

/// The (0,1) image of a Hadamard matrix: +1 -> 1, -1 -> 0.
class ZeroOneSeed {
public:
    explicit ZeroOneSeed(const HadamardMatrix& h);

    int order() const noexcept { return order_; }
    int at(int row, int col) const { return entries_[static_cast<std::size_t>(row * order_ + col)]; }

    /// Rows restricted to the given 1-based columns, as treatments of width columns.size().
    ComponentMatrix rows(std::span<const int> columns) const;
    /// Rows restricted to columns first..first+count-1 (1-based).
    ComponentMatrix rows(int first, int count) const;

private:
    int order_;
    std::vector<std::uint8_t> entries_;
};

bool is_hadamard(int order, std::span<const int> entries);

/// k-fold Kronecker power of [[1,1],[1,-1]].
HadamardMatrix sylvester(int k);
/// Paley construction I, order q+1, for a prime power q = 3 mod 4.
HadamardMatrix paley_type1(int q);
/// Paley construction II, order 2(q+1), for a prime power q = 1 mod 4.
HadamardMatrix paley_type2(int q);
HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b);

/// Row and column sign flips so that the first row and column are all +1.
HadamardMatrix normalize(const HadamardMatrix& h);
ZeroOneSeed zero_one(const HadamardMatrix& h);

/// Order cap: CHOGEN_MAX_HADAMARD if set and valid, else 64.
int max_hadamard_order();

/// Normalized Hadamard matrix of the given order, Sylvester type for powers of two.
/// Throws Unsupported for orders this library cannot build or above `cap`.
HadamardMatrix hadamard_of_order(int order, std::optional<int> cap = std::nullopt);
bool hadamard_order_supported(int order, std::optional<int> cap = std::nullopt);

/// Smallest supported order v >= n.
int least_hadamard_order(int n, std::optional<int> cap = std::nullopt);

}  // namespace chogen
