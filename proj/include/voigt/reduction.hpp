#pragma once

#include <cstddef>
#include <utility>

namespace voigt {

/// Deterministic pairwise-tree summation of term(i) over [lo, hi).
///
/// The split points depend only on the range, so the rounding sequence is
/// identical across runs and thread counts. Leaves are summed left to right.
template <class Term>
double pairwise_sum(std::size_t lo, std::size_t hi, Term&& term) {
    constexpr std::size_t kLeaf = 64;
    if (hi - lo <= kLeaf) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, std::forward<Term>(term));
}

}  // namespace voigt
