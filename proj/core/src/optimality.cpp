#include "chogen/optimality.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace chogen {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void require_model_width(const ChoiceDesign& d, const ModelSpec& model) {
    if (model.factors() != d.factors()) {
        throw Error(ErrorKind::EffectOutOfRange, "model has " + std::to_string(model.factors()) +
                                                     " factors, design has " + std::to_string(d.factors()));
    }
}

void require_small_sets(const ChoiceDesign& d) {
    if (d.set_size() > 64) throw Error(ErrorKind::Unsupported, "set sizes above 64 are not supported");
}

// Bit i of entry p is the effective position of option i of set p.
std::vector<std::uint64_t> effective_masks(const ChoiceDesign& d, const FactorialEffect& e) {
    const int n = d.factors();
    const std::uint64_t mask = e.mask(n);
    const int order = e.order();
    std::vector<std::uint64_t> out;
    out.reserve(d.num_sets());
    for (const auto& s : d.sets()) {
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const int position = (order + 1 - std::popcount(s[i].bits() & mask)) & 1;
            bits |= static_cast<std::uint64_t>(position) << i;
        }
        out.push_back(bits);
    }
    return out;
}

EtaCounts count_eta(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b, std::uint64_t full) {
    EtaCounts out;
    for (std::size_t p = 0; p < a.size(); ++p) {
        const std::uint64_t x = a[p];
        const std::uint64_t y = b[p];
        const std::int64_t c11 = std::popcount(x & y);
        const std::int64_t c00 = std::popcount(~x & ~y & full);
        const std::int64_t c10 = std::popcount(x & ~y & full);
        const std::int64_t c01 = std::popcount(~x & y & full);
        out.plus += c00 * c11;
        out.minus += c01 * c10;
    }
    return out;
}

// Rank modulo a prime never exceeds the rank over the rationals.
std::size_t modular_rank(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values) {
    constexpr std::int64_t p = 2147483647;
    std::vector<std::int64_t> a(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) a[k] = ((values[k] % p) + p) % p;
    auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return a[i * cols + j]; };
    auto inverse = [](std::int64_t x) {
        std::int64_t result = 1;
        for (std::int64_t e = p - 2; e > 0; e >>= 1) {
            if (e & 1) result = result * x % p;
            x = x * x % p;
        }
        return result;
    };
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && at(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
        }
        const std::int64_t inv = inverse(at(rank, col));
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (at(i, col) == 0) continue;
            const std::int64_t f = at(i, col) * inv % p;
            for (std::size_t j = col; j < cols; ++j) at(i, j) = ((at(i, j) - f * at(rank, j)) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

bool positive_definite(const ScaledIntMatrix& c, std::int64_t rank_bound) {
    if (static_cast<std::int64_t>(c.size()) > rank_bound) return false;
    if (c.is_diagonal()) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.at(i, i) <= 0) return false;
        }
        return true;
    }
    // Gram-type matrices here are PSD, so full rank is equivalent to PD.
    return exact_rank(c.size(), c.size(), c.ints()) == c.size();
}

}  // namespace

EtaCounts eta_counts(const ChoiceDesign& d, const FactorialEffect& e1, const FactorialEffect& e2) {
    if (e1 == e2) throw Error(ErrorKind::SameEffect, "eta counts need two different effects");
    require_small_sets(d);
    return count_eta(effective_masks(d, e1), effective_masks(d, e2), width_mask(static_cast<int>(d.set_size())));
}

std::vector<int> np_counts(const ChoiceDesign& d, const FactorialEffect& e) {
    require_small_sets(d);
    const auto masks = effective_masks(d, e);
    const int m = static_cast<int>(d.set_size());
    std::vector<int> out;
    out.reserve(masks.size());
    for (auto bits : masks) out.push_back(m - std::popcount(bits));
    return out;
}

Rational max_trace(int q, int n, int m) {
    if (q < 1) throw Error(ErrorKind::RangeError, "Q must be positive");
    if (m < 2) throw Error(ErrorKind::RangeError, "m must be at least 2");
    if (n < 1 || n > 40) throw Error(ErrorKind::RangeError, "n outside 1..40");
    const std::int64_t two_n = std::int64_t{1} << n;
    if (m % 2 == 0) return Rational(q, two_n);
    const std::int64_t mm = static_cast<std::int64_t>(m) * m;
    return Rational(static_cast<std::int64_t>(q) * (mm - 1), two_n * mm);
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::UniversallyOptimal: return "universally-optimal";
    case Verdict::ConnectedNotOptimal: return "connected-not-certified";
    case Verdict::NotConnected: return "not-connected";
    }
    return "unknown";
}

std::size_t exact_rank(std::size_t rows, std::size_t cols, std::span<const std::int64_t> values) {
    if (values.size() != rows * cols) throw Error(ErrorKind::ShapeMismatch, "rank input does not match its shape");
    if (modular_rank(rows, cols, values) == std::min(rows, cols)) return std::min(rows, cols);
    std::vector<BigInt> a(values.begin(), values.end());
    auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * cols + j]; };
    BigInt previous = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && at(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank) {
            for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
        }
        // Bareiss step: every entry stays a minor of the input, so the division is exact.
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                at(i, j) = (at(rank, col) * at(i, j) - at(i, col) * at(rank, j)) / previous;
            }
            at(i, col) = 0;
        }
        previous = at(rank, col);
        ++rank;
    }
    return rank;
}

OptimalityReport verify(const ChoiceDesign& d, const ModelSpec& model) {
    require_model_width(d, model);
    require_small_sets(d);
    const auto& interest = model.interest();
    const std::size_t q = interest.size();
    const int m = static_cast<int>(d.set_size());
    const std::uint64_t full = width_mask(m);

    OptimalityReport report(model);
    report.total_component_pairs = d.component_pairs();

    std::vector<std::vector<std::uint64_t>> masks;
    masks.reserve(q);
    for (const auto& e : interest) masks.push_back(effective_masks(d, e));

    report.diagonal = true;
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = a + 1; b < q; ++b) {
            const auto eta = count_eta(masks[a], masks[b], full);
            if (!eta.balanced()) {
                report.diagonal = false;
                report.offending_pairs.push_back({interest[a], interest[b], eta});
            }
        }
    }

    report.balance_ok = true;
    report.np_table.reserve(q);
    for (std::size_t a = 0; a < q; ++a) {
        std::vector<int> row;
        row.reserve(d.num_sets());
        for (auto bits : masks[a]) {
            const int zeros = m - std::popcount(bits);
            row.push_back(zeros);
            const bool ok = m % 2 == 0 ? 2 * zeros == m : (2 * zeros == m - 1 || 2 * zeros == m + 1);
            if (!ok) report.balance_ok = false;
        }
        report.np_table.push_back(std::move(row));
    }

    const auto info = info_matrix(d, model);
    const auto& c1 = info.interest_only;
    if (c1.is_diagonal() != report.diagonal) {
        throw std::logic_error("pair counts and contrast product disagree on diagonality");
    }
    report.trace = c1.trace();
    report.trace_bound = max_trace(static_cast<int>(q), d.factors(), m);
    report.information = info.exact;
    // rank(C) <= rank(Lambda*) <= N(m - 1).
    const auto rank_bound = static_cast<std::int64_t>(d.num_sets()) * (m - 1);

    if (model.nuisance().empty()) {
        report.connected = positive_definite(c1, rank_bound);
    } else {
        report.cross_block_zero = info.cross_block_zero;
        report.adjusted_trace = info.numeric.trace();
        if (info.cross_block_zero) {
            report.connected = positive_definite(c1, rank_bound);
        } else {
            // The Schur complement of a PSD block matrix has rank rank(M) - rank(M22).
            std::vector<FactorialEffect> all(interest);
            all.insert(all.end(), model.nuisance().begin(), model.nuisance().end());
            const auto whole = cstar_matrix(d, all);
            const std::size_t q2 = model.nuisance().size();
            const auto m22 = whole.block(q, q2, q, q2);
            const auto rank_all = exact_rank(whole.size(), whole.size(), whole.ints());
            const auto rank_nuisance = exact_rank(q2, q2, m22);
            report.connected = rank_all - rank_nuisance == q;
        }
    }

    const bool cross_ok = report.cross_block_zero.value_or(true);
    const bool optimal = report.diagonal && report.balance_ok && report.trace == report.trace_bound && cross_ok;
    if (optimal && report.connected) {
        report.verdict = Verdict::UniversallyOptimal;
    } else {
        report.verdict = report.connected ? Verdict::ConnectedNotOptimal : Verdict::NotConnected;
    }
    return report;
}

ScaledIntMatrix oracle_cstar(const ChoiceDesign& d, std::span<const FactorialEffect> effects) {
    const std::size_t q = effects.size();
    const auto m = static_cast<std::int64_t>(d.set_size());
    ScaledIntMatrix out(q, Rational(1, (std::int64_t{1} << d.factors()) * static_cast<std::int64_t>(d.num_sets()) * m * m));
    for (const auto& s : d.sets()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                for (std::size_t a = 0; a < q; ++a) {
                    const int xi = effective_position(s[i], effects[a]);
                    const int xj = effective_position(s[j], effects[a]);
                    if (xi != xj) out.at(a, a) += 4;
                    for (std::size_t b = a + 1; b < q; ++b) {
                        const int yi = effective_position(s[i], effects[b]);
                        const int yj = effective_position(s[j], effects[b]);
                        // (00,11) or (11,00) adds 4; (01,10) or (10,01) subtracts 4.
                        if (xi == yi && xj == yj && xi != xj) {
                            out.at(a, b) += 4;
                        } else if (xi != yi && xj != yj && xi != xj) {
                            out.at(a, b) -= 4;
                        }
                    }
                }
            }
        }
    }
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < a; ++b) out.at(a, b) = out.at(b, a);
    }
    return out;
}

namespace {

std::string rational_text(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

std::string OptimalityReport::summary() const {
    std::ostringstream out;
    out << "model: " << model.name() << '\n';
    out << "verdict: " << to_string(verdict) << '\n';
    out << "diagonal: " << (diagonal ? "yes" : "no");
    if (!offending_pairs.empty()) out << " (" << offending_pairs.size() << " offending pairs)";
    out << '\n';
    out << "balanced: " << (balance_ok ? "yes" : "no") << '\n';
    if (cross_block_zero) out << "cross block zero: " << (*cross_block_zero ? "yes" : "no") << '\n';
    out << "trace: " << rational_text(trace) << " (bound " << rational_text(trace_bound) << ")\n";
    if (adjusted_trace) out << "adjusted trace: " << *adjusted_trace << '\n';
    out << "connected: " << (connected ? "yes" : "no") << '\n';
    out << "component pairs: " << total_component_pairs << '\n';
    const std::size_t shown = std::min<std::size_t>(offending_pairs.size(), 10);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& p = offending_pairs[i];
        out << "  " << p.first.name() << " x " << p.second.name() << ": eta+=" << p.eta.plus
            << " eta-=" << p.eta.minus << '\n';
    }
    if (shown < offending_pairs.size()) out << "  ... " << offending_pairs.size() - shown << " more\n";
    return out.str();
}

}  // namespace chogen
