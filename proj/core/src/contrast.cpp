#include "chogen/contrast.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Dense>

namespace chogen {

namespace {

constexpr int kMaxContrastFactors = 24;

void require_fits(const FactorialEffect& e, int n) {
    if (!e.fits(n)) {
        throw Error(ErrorKind::EffectOutOfRange, e.name() + " does not fit in " + std::to_string(n) + " factors");
    }
}

Rational design_scale(const ChoiceDesign& d, bool with_treatment_count) {
    const auto m = static_cast<std::int64_t>(d.set_size());
    std::int64_t denom = static_cast<std::int64_t>(d.num_sets()) * m * m;
    if (with_treatment_count) {
        if (d.factors() > 40) throw Error(ErrorKind::RangeError, "scale 2^n overflows for n > 40");
        denom <<= d.factors();
    }
    return Rational(1, denom);
}

// b_T = prod over the effect's factors of (-1 if level 0 else +1).
int contrast_entry(const Treatment& t, const FactorialEffect& e) {
    int sign = 1;
    for (int h : e.factors()) {
        if (t.level(h) == 0) sign = -sign;
    }
    return sign;
}

}  // namespace

int effective_position(const Treatment& t, const FactorialEffect& e) {
    const auto ones = std::popcount(t.bits() & e.mask(t.width()));
    return (e.order() + 1 - ones) & 1;
}

std::vector<int> effective_choice_set(const ChoiceSet& s, const FactorialEffect& e) {
    std::vector<int> out;
    out.reserve(s.size());
    for (const auto& t : s.options()) out.push_back(effective_position(t, e));
    return out;
}

std::int64_t SignVector::sum() const {
    std::int64_t total = 0;
    for (auto v : entries) total += v;
    return total;
}

SignVector contrast_vector(const FactorialEffect& e, int n) {
    require_fits(e, n);
    if (n > kMaxContrastFactors) {
        throw Error(ErrorKind::RangeError, "contrast vectors are limited to n <= " + std::to_string(kMaxContrastFactors));
    }
    SignVector out;
    const std::uint64_t count = std::uint64_t{1} << n;
    out.entries.resize(count);
    for (std::uint64_t index = 0; index < count; ++index) {
        out.entries[index] = static_cast<std::int8_t>(contrast_entry(Treatment(n, index), e));
    }
    return out;
}

int pair_contribution(const FactorialEffect& e1, const FactorialEffect& e2, const Treatment& ti,
                      const Treatment& tj) {
    if (ti.width() != tj.width()) throw Error(ErrorKind::WidthMismatch, "pair of treatments with different widths");
    if (ti == tj) throw Error(ErrorKind::SamePair, "component pair needs two distinct treatments");
    require_fits(e1, ti.width());
    require_fits(e2, ti.width());
    const int dx = contrast_entry(ti, e1) - contrast_entry(tj, e1);
    const int dy = contrast_entry(ti, e2) - contrast_entry(tj, e2);
    return dx * dy;
}

ScaledIntMatrix::ScaledIntMatrix(std::size_t size, Rational scale)
    : size_(size), ints_(size * size, 0), scale_(scale) {}

ScaledIntMatrix::ScaledIntMatrix(std::size_t size, std::vector<std::int64_t> ints, Rational scale)
    : size_(size), ints_(std::move(ints)), scale_(scale) {
    if (ints_.size() != size_ * size_) throw Error(ErrorKind::ShapeMismatch, "matrix data does not match its size");
}

std::int64_t ScaledIntMatrix::trace_ints() const {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < size_; ++i) t += at(i, i);
    return t;
}

bool ScaledIntMatrix::is_symmetric() const {
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = i + 1; j < size_; ++j) {
            if (at(i, j) != at(j, i)) return false;
        }
    }
    return true;
}

bool ScaledIntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < size_; ++i) {
        for (std::size_t j = 0; j < size_; ++j) {
            if (i != j && at(i, j) != 0) return false;
        }
    }
    return true;
}

bool ScaledIntMatrix::is_scalar_identity() const {
    if (!is_diagonal()) return false;
    for (std::size_t i = 1; i < size_; ++i) {
        if (at(i, i) != at(0, 0)) return false;
    }
    return true;
}

std::vector<std::int64_t> ScaledIntMatrix::block(std::size_t row0, std::size_t rows, std::size_t col0,
                                                 std::size_t cols) const {
    if (row0 + rows > size_ || col0 + cols > size_) throw Error(ErrorKind::ShapeMismatch, "block outside matrix");
    std::vector<std::int64_t> out;
    out.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) out.push_back(at(row0 + i, col0 + j));
    }
    return out;
}

ScaledIntMatrix ScaledIntMatrix::principal(std::size_t first, std::size_t count) const {
    return ScaledIntMatrix(count, block(first, count, first, count), scale_);
}

ScaledIntMatrix lambda_star(const ChoiceDesign& d) {
    const int n = d.factors();
    if (n > kDenseLambdaMaxFactors) {
        throw Error(ErrorKind::Unsupported, "dense Lambda* is limited to n <= " + std::to_string(kDenseLambdaMaxFactors));
    }
    const std::size_t size = std::size_t{1} << n;
    ScaledIntMatrix out(size, design_scale(d, false));
    const auto m = static_cast<std::int64_t>(d.set_size());
    for (const auto& s : d.sets()) {
        for (const auto& ti : s.options()) {
            out.at(ti.index(), ti.index()) += m - 1;
            for (const auto& tj : s.options()) {
                if (tj != ti) out.at(ti.index(), tj.index()) -= 1;
            }
        }
    }
    return out;
}

namespace detail {

ScaledIntMatrix cstar_by_product(const ChoiceDesign& d, std::span<const FactorialEffect> effects) {
    const int n = d.factors();
    for (const auto& e : effects) require_fits(e, n);

    // Treatments outside the design have zero rows and columns in Lambda*.
    std::vector<Treatment> support;
    for (const auto& s : d.sets()) support.insert(support.end(), s.options().begin(), s.options().end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const std::size_t width = support.size();
    auto position = [&](const Treatment& t) {
        return static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), t) - support.begin());
    };

    std::vector<std::int64_t> lambda(width * width, 0);
    const auto m = static_cast<std::int64_t>(d.set_size());
    std::vector<std::size_t> slots(d.set_size());
    for (const auto& s : d.sets()) {
        for (std::size_t i = 0; i < s.size(); ++i) slots[i] = position(s[i]);
        for (std::size_t i = 0; i < s.size(); ++i) {
            lambda[slots[i] * width + slots[i]] += m - 1;
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (j != i) lambda[slots[i] * width + slots[j]] -= 1;
            }
        }
    }

    const std::size_t q = effects.size();
    std::vector<std::int64_t> contrast(q * width);
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t t = 0; t < width; ++t) contrast[a * width + t] = contrast_entry(support[t], effects[a]);
    }

    // W = B Lambda*, then C* = W B'.
    std::vector<std::int64_t> w(q * width, 0);
    for (std::size_t a = 0; a < q; ++a) {
        const std::int64_t* brow = &contrast[a * width];
        std::int64_t* wrow = &w[a * width];
        for (std::size_t k = 0; k < width; ++k) {
            const std::int64_t b = brow[k];
            const std::int64_t* lrow = &lambda[k * width];
            for (std::size_t t = 0; t < width; ++t) wrow[t] += b * lrow[t];
        }
    }
    ScaledIntMatrix out(q, design_scale(d, true));
    for (std::size_t a = 0; a < q; ++a) {
        const std::int64_t* wrow = &w[a * width];
        for (std::size_t b = a; b < q; ++b) {
            const std::int64_t* brow = &contrast[b * width];
            std::int64_t acc = 0;
            for (std::size_t t = 0; t < width; ++t) acc += wrow[t] * brow[t];
            out.at(a, b) = acc;
            out.at(b, a) = acc;
        }
    }
    return out;
}

ScaledIntMatrix cstar_by_sets(const ChoiceDesign& d, std::span<const FactorialEffect> effects) {
    const int n = d.factors();
    for (const auto& e : effects) require_fits(e, n);
    const std::size_t q = effects.size();
    const std::size_t m = d.set_size();
    std::vector<std::uint64_t> masks;
    std::vector<int> orders;
    for (const auto& e : effects) {
        masks.push_back(e.mask(n));
        orders.push_back(e.order());
    }

    ScaledIntMatrix out(q, design_scale(d, true));
    std::vector<std::int64_t> signs(q * m);
    std::vector<std::int64_t> sums(q);
    const auto mm = static_cast<std::int64_t>(m);
    for (const auto& s : d.sets()) {
        for (std::size_t a = 0; a < q; ++a) {
            std::int64_t total = 0;
            for (std::size_t i = 0; i < m; ++i) {
                const int zeros = orders[a] - std::popcount(s[i].bits() & masks[a]);
                const std::int64_t v = (zeros & 1) ? -1 : 1;
                signs[a * m + i] = v;
                total += v;
            }
            sums[a] = total;
        }
        // sum_{i<j} (x_i - x_j)(y_i - y_j) = m sum x_i y_i - (sum x)(sum y)
        for (std::size_t a = 0; a < q; ++a) {
            for (std::size_t b = a; b < q; ++b) {
                std::int64_t dot = 0;
                for (std::size_t i = 0; i < m; ++i) dot += signs[a * m + i] * signs[b * m + i];
                out.at(a, b) += mm * dot - sums[a] * sums[b];
            }
        }
    }
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < a; ++b) out.at(a, b) = out.at(b, a);
    }
    return out;
}

}  // namespace detail

ScaledIntMatrix cstar_matrix(const ChoiceDesign& d, std::span<const FactorialEffect> effects) {
    if (d.factors() <= kDenseLambdaMaxFactors) return detail::cstar_by_product(d, effects);
    return detail::cstar_by_sets(d, effects);
}

double NumericMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < size; ++i) t += at(i, i);
    return t;
}

namespace {

NumericMatrix to_numeric(const ScaledIntMatrix& c) {
    NumericMatrix out;
    out.size = c.size();
    out.values.reserve(c.ints().size());
    const double scale = boost::rational_cast<double>(c.scale());
    for (auto v : c.ints()) out.values.push_back(scale * static_cast<double>(v));
    return out;
}

// C_(2) = scale * (M11 - M12 M22^+ M21) with a symmetric eigen pseudo-inverse.
NumericMatrix numeric_schur(const ScaledIntMatrix& full, std::size_t q1) {
    const std::size_t q2 = full.size() - q1;
    Eigen::MatrixXd m11(q1, q1), m12(q1, q2), m22(q2, q2);
    for (std::size_t i = 0; i < q1; ++i) {
        for (std::size_t j = 0; j < q1; ++j) m11(i, j) = static_cast<double>(full.at(i, j));
        for (std::size_t j = 0; j < q2; ++j) m12(i, j) = static_cast<double>(full.at(i, q1 + j));
    }
    for (std::size_t i = 0; i < q2; ++i) {
        for (std::size_t j = 0; j < q2; ++j) m22(i, j) = static_cast<double>(full.at(q1 + i, q1 + j));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m22);
    const Eigen::VectorXd& values = eig.eigenvalues();
    const double largest = values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
    Eigen::VectorXd inverted = Eigen::VectorXd::Zero(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        if (std::abs(values(i)) > kPseudoInverseCutoff * largest) inverted(i) = 1.0 / values(i);
    }
    const Eigen::MatrixXd pinv = eig.eigenvectors() * inverted.asDiagonal() * eig.eigenvectors().transpose();
    const Eigen::MatrixXd schur = m11 - m12 * pinv * m12.transpose();

    NumericMatrix numeric;
    numeric.size = q1;
    const double scale = boost::rational_cast<double>(full.scale());
    for (std::size_t i = 0; i < q1; ++i) {
        for (std::size_t j = 0; j < q1; ++j) numeric.values.push_back(scale * schur(i, j));
    }
    return numeric;
}

void check_factors(const ChoiceDesign& d, const ModelSpec& model) {
    if (model.factors() != d.factors()) {
        throw Error(ErrorKind::EffectOutOfRange, "model has " + std::to_string(model.factors()) +
                                                     " factors, design has " + std::to_string(d.factors()));
    }
}

ScaledIntMatrix full_cstar(const ChoiceDesign& d, const ModelSpec& model) {
    std::vector<FactorialEffect> all(model.interest());
    all.insert(all.end(), model.nuisance().begin(), model.nuisance().end());
    return cstar_matrix(d, all);
}

}  // namespace

InformationMatrix info_matrix(const ChoiceDesign& d, const ModelSpec& model) {
    check_factors(d, model);
    const auto& interest = model.interest();
    if (model.nuisance().empty()) {
        auto c = cstar_matrix(d, interest);
        InformationMatrix out{c, to_numeric(c), c, true};
        return out;
    }

    const auto full = full_cstar(d, model);
    const std::size_t q1 = interest.size();
    const auto cross = full.block(0, q1, q1, model.nuisance().size());
    const bool cross_zero = std::all_of(cross.begin(), cross.end(), [](std::int64_t v) { return v == 0; });
    auto c11 = full.principal(0, q1);
    if (cross_zero) {
        InformationMatrix out{c11, to_numeric(c11), c11, true};
        return out;
    }
    InformationMatrix out{std::nullopt, numeric_schur(full, q1), c11, false};
    return out;
}

NumericMatrix schur_information(const ChoiceDesign& d, const ModelSpec& model) {
    check_factors(d, model);
    return numeric_schur(full_cstar(d, model), model.q());
}

}  // namespace chogen
