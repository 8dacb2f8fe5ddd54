#include "chogen/hadamard.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

namespace chogen {

namespace {

// Finite field GF(p^k) on elements 0..q-1 written in base p (polynomial coefficients).
class GaloisField {
public:
    explicit GaloisField(int q) : q_(q) {
        if (!prime_power(q, p_, k_)) throw Error(ErrorKind::BadOrder, std::to_string(q) + " is not a prime power");
        build_multiplication();
    }

    int size() const noexcept { return q_; }

    int sub(int a, int b) const {
        int out = 0;
        int place = 1;
        for (int i = 0; i < k_; ++i) {
            const int da = a % p_;
            const int db = b % p_;
            out += ((da - db + p_) % p_) * place;
            a /= p_;
            b /= p_;
            place *= p_;
        }
        return out;
    }

    /// Quadratic character: 0, +1 for nonzero squares, -1 otherwise.
    int chi(int a) const {
        if (a == 0) return 0;
        return squares_[static_cast<std::size_t>(a)] ? 1 : -1;
    }

private:
    static bool prime_power(int q, int& p, int& k) {
        if (q < 2) return false;
        p = 0;
        for (int d = 2; d <= q; ++d) {
            if (q % d == 0) {
                p = d;
                break;
            }
        }
        k = 0;
        int rest = q;
        while (rest % p == 0) {
            rest /= p;
            ++k;
        }
        return rest == 1;
    }

    std::vector<int> digits(int a) const {
        std::vector<int> out(static_cast<std::size_t>(k_));
        for (int i = 0; i < k_; ++i) {
            out[static_cast<std::size_t>(i)] = a % p_;
            a /= p_;
        }
        return out;
    }

    // Product of two elements modulo the monic polynomial x^k - sum(reduction_i x^i).
    int multiply(int a, int b, const std::vector<int>& modulus) const {
        const auto da = digits(a);
        const auto db = digits(b);
        std::vector<int> prod(static_cast<std::size_t>(2 * k_), 0);
        for (int i = 0; i < k_; ++i) {
            for (int j = 0; j < k_; ++j) {
                auto& slot = prod[static_cast<std::size_t>(i + j)];
                slot = (slot + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p_;
            }
        }
        for (int deg = 2 * k_ - 1; deg >= k_; --deg) {
            const int c = prod[static_cast<std::size_t>(deg)];
            if (c == 0) continue;
            prod[static_cast<std::size_t>(deg)] = 0;
            for (int i = 0; i < k_; ++i) {
                auto& slot = prod[static_cast<std::size_t>(deg - k_ + i)];
                slot = (slot + c * modulus[static_cast<std::size_t>(i)]) % p_;
            }
        }
        int out = 0;
        for (int i = k_ - 1; i >= 0; --i) out = out * p_ + prod[static_cast<std::size_t>(i)];
        return out;
    }

    void build_multiplication() {
        // Search reduction polynomials until the quotient ring has no zero divisors.
        const int candidates = q_;
        for (int code = 0; code < candidates; ++code) {
            const auto modulus = digits(code);
            if (k_ > 1 && modulus[0] == 0) continue;
            std::vector<int> table(static_cast<std::size_t>(q_ * q_));
            bool field = true;
            for (int a = 1; a < q_ && field; ++a) {
                for (int b = 1; b < q_; ++b) {
                    const int c = multiply(a, b, modulus);
                    if (c == 0) {
                        field = false;
                        break;
                    }
                    table[static_cast<std::size_t>(a * q_ + b)] = c;
                }
            }
            if (!field) continue;
            squares_.assign(static_cast<std::size_t>(q_), false);
            for (int a = 1; a < q_; ++a) squares_[static_cast<std::size_t>(table[static_cast<std::size_t>(a * q_ + a)])] = true;
            return;
        }
        throw Error(ErrorKind::BadOrder, "no irreducible polynomial found for GF(" + std::to_string(q_) + ")");
    }

    int q_;
    int p_ = 0;
    int k_ = 0;
    std::vector<bool> squares_;
};

bool is_prime_power(int q) {
    if (q < 2) return false;
    int p = 2;
    while (q % p != 0) ++p;
    while (q % p == 0) q /= p;
    return q == 1;
}

std::vector<std::int8_t> jacobsthal(const GaloisField& field) {
    const int q = field.size();
    std::vector<std::int8_t> out(static_cast<std::size_t>(q * q));
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) out[static_cast<std::size_t>(a * q + b)] = static_cast<std::int8_t>(field.chi(field.sub(a, b)));
    }
    return out;
}

std::optional<HadamardMatrix> build(int order) {
    if (order == 1) return sylvester(0);
    if (order == 2) return sylvester(1);
    if (order % 4 != 0) return std::nullopt;
    if ((order & (order - 1)) == 0) {
        int k = 0;
        while ((1 << k) < order) ++k;
        return sylvester(k);
    }
    if (const int q = order - 1; is_prime_power(q) && q % 4 == 3) return paley_type1(q);
    if (const int q = order / 2 - 1; is_prime_power(q) && q % 4 == 1) return paley_type2(q);
    if (auto half = build(order / 2)) return kronecker(sylvester(1), *half);
    return std::nullopt;
}

const std::optional<HadamardMatrix>& cached(int order) {
    static std::mutex mutex;
    static std::map<int, std::optional<HadamardMatrix>> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) {
        auto h = build(order);
        if (h) h = normalize(*h);
        it = cache.emplace(order, std::move(h)).first;
    }
    return it->second;
}

}  // namespace

HadamardMatrix::HadamardMatrix(int order, std::vector<std::int8_t> entries)
    : order_(order), entries_(std::move(entries)) {
    if (order_ < 1 || entries_.size() != static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_)) {
        throw Error(ErrorKind::NotHadamard, "entry count does not match order " + std::to_string(order_));
    }
    std::vector<int> widened(entries_.begin(), entries_.end());
    if (!is_hadamard(order_, widened)) throw Error(ErrorKind::NotHadamard, "H H' != v I for order " + std::to_string(order_));
}

bool HadamardMatrix::is_normalized() const {
    for (int i = 0; i < order_; ++i) {
        if (at(0, i) != 1 || at(i, 0) != 1) return false;
    }
    return true;
}

ZeroOneSeed::ZeroOneSeed(const HadamardMatrix& h) : order_(h.order()) {
    entries_.reserve(h.entries().size());
    for (auto v : h.entries()) entries_.push_back(v > 0 ? 1 : 0);
}

ComponentMatrix ZeroOneSeed::rows(std::span<const int> columns) const {
    if (columns.empty()) throw Error(ErrorKind::RangeError, "no seed columns selected");
    for (int c : columns) {
        if (c < 1 || c > order_) {
            throw Error(ErrorKind::RangeError, "seed column " + std::to_string(c) + " outside 1.." + std::to_string(order_));
        }
    }
    const int width = static_cast<int>(columns.size());
    ComponentMatrix out;
    out.reserve(static_cast<std::size_t>(order_));
    for (int r = 0; r < order_; ++r) {
        std::uint64_t bits = 0;
        for (int c : columns) bits = (bits << 1) | static_cast<std::uint64_t>(at(r, c - 1));
        out.emplace_back(width, bits);
    }
    return out;
}

ComponentMatrix ZeroOneSeed::rows(int first, int count) const {
    std::vector<int> columns;
    for (int c = first; c < first + count; ++c) columns.push_back(c);
    return rows(columns);
}

bool is_hadamard(int order, std::span<const int> entries) {
    if (order < 1 || entries.size() != static_cast<std::size_t>(order) * static_cast<std::size_t>(order)) return false;
    for (int v : entries) {
        if (v != 1 && v != -1) return false;
    }
    for (int i = 0; i < order; ++i) {
        for (int j = i; j < order; ++j) {
            long dot = 0;
            for (int k = 0; k < order; ++k) dot += entries[static_cast<std::size_t>(i * order + k)] * entries[static_cast<std::size_t>(j * order + k)];
            if (dot != (i == j ? order : 0)) return false;
        }
    }
    return true;
}

HadamardMatrix sylvester(int k) {
    if (k < 0 || k > 8) throw Error(ErrorKind::BadOrder, "Sylvester exponent " + std::to_string(k));
    std::vector<std::int8_t> cur{1};
    int order = 1;
    for (int step = 0; step < k; ++step) {
        const int next = 2 * order;
        std::vector<std::int8_t> grown(static_cast<std::size_t>(next * next));
        for (int i = 0; i < next; ++i) {
            for (int j = 0; j < next; ++j) {
                const int v = cur[static_cast<std::size_t>((i % order) * order + (j % order))];
                const bool flip = i >= order && j >= order;
                grown[static_cast<std::size_t>(i * next + j)] = static_cast<std::int8_t>(flip ? -v : v);
            }
        }
        cur = std::move(grown);
        order = next;
    }
    return HadamardMatrix(order, std::move(cur));
}

HadamardMatrix paley_type1(int q) {
    if (q < 3 || q % 4 != 3 || !is_prime_power(q)) {
        throw Error(ErrorKind::BadOrder, "Paley I needs a prime power q = 3 mod 4, got " + std::to_string(q));
    }
    const GaloisField field(q);
    const auto jac = jacobsthal(field);
    const int order = q + 1;
    // H = I + [[0, j'], [-j, Q]]
    std::vector<std::int8_t> h(static_cast<std::size_t>(order * order));
    auto set = [&](int i, int j, int v) { h[static_cast<std::size_t>(i * order + j)] = static_cast<std::int8_t>(v); };
    set(0, 0, 1);
    for (int i = 1; i < order; ++i) {
        set(0, i, 1);
        set(i, 0, -1);
        for (int j = 1; j < order; ++j) {
            set(i, j, jac[static_cast<std::size_t>((i - 1) * q + (j - 1))] + (i == j ? 1 : 0));
        }
    }
    return HadamardMatrix(order, std::move(h));
}

HadamardMatrix paley_type2(int q) {
    if (q < 5 || q % 4 != 1 || !is_prime_power(q)) {
        throw Error(ErrorKind::BadOrder, "Paley II needs a prime power q = 1 mod 4, got " + std::to_string(q));
    }
    const GaloisField field(q);
    const auto jac = jacobsthal(field);
    const int c = q + 1;
    // Symmetric conference matrix S = [[0, j'], [j, Q]].
    auto conference = [&](int i, int j) -> int {
        if (i == 0 && j == 0) return 0;
        if (i == 0 || j == 0) return 1;
        return jac[static_cast<std::size_t>((i - 1) * q + (j - 1))];
    };
    const int order = 2 * c;
    std::vector<std::int8_t> h(static_cast<std::size_t>(order * order));
    static constexpr int kZero[2][2] = {{1, 1}, {1, -1}};
    static constexpr int kOne[2][2] = {{1, -1}, {-1, -1}};
    for (int i = 0; i < c; ++i) {
        for (int j = 0; j < c; ++j) {
            const int s = conference(i, j);
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const int v = s == 0 ? kZero[a][b] : s * kOne[a][b];
                    h[static_cast<std::size_t>((2 * i + a) * order + 2 * j + b)] = static_cast<std::int8_t>(v);
                }
            }
        }
    }
    return HadamardMatrix(order, std::move(h));
}

HadamardMatrix kronecker(const HadamardMatrix& a, const HadamardMatrix& b) {
    const int order = a.order() * b.order();
    std::vector<std::int8_t> h(static_cast<std::size_t>(order) * static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        for (int j = 0; j < order; ++j) {
            const int v = a.at(i / b.order(), j / b.order()) * b.at(i % b.order(), j % b.order());
            h[static_cast<std::size_t>(i * order + j)] = static_cast<std::int8_t>(v);
        }
    }
    return HadamardMatrix(order, std::move(h));
}

HadamardMatrix normalize(const HadamardMatrix& h) {
    const int v = h.order();
    std::vector<std::int8_t> e(h.entries().begin(), h.entries().end());
    for (int i = 0; i < v; ++i) {
        if (e[static_cast<std::size_t>(i * v)] < 0) {
            for (int j = 0; j < v; ++j) e[static_cast<std::size_t>(i * v + j)] = static_cast<std::int8_t>(-e[static_cast<std::size_t>(i * v + j)]);
        }
    }
    for (int j = 0; j < v; ++j) {
        if (e[static_cast<std::size_t>(j)] < 0) {
            for (int i = 0; i < v; ++i) e[static_cast<std::size_t>(i * v + j)] = static_cast<std::int8_t>(-e[static_cast<std::size_t>(i * v + j)]);
        }
    }
    return HadamardMatrix(v, std::move(e));
}

ZeroOneSeed zero_one(const HadamardMatrix& h) { return ZeroOneSeed(h); }

int max_hadamard_order() {
    if (const char* env = std::getenv("CHOGEN_MAX_HADAMARD")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 256) return static_cast<int>(v);
    }
    return 64;
}

bool hadamard_order_supported(int order, std::optional<int> cap) {
    if (order < 1 || order > cap.value_or(max_hadamard_order())) return false;
    return cached(order).has_value();
}

HadamardMatrix hadamard_of_order(int order, std::optional<int> cap) {
    const int limit = cap.value_or(max_hadamard_order());
    if (order < 1 || order > limit) {
        throw Error(ErrorKind::Unsupported, "Hadamard order " + std::to_string(order) + " above cap " + std::to_string(limit));
    }
    const auto& h = cached(order);
    if (!h) throw Error(ErrorKind::Unsupported, "no construction for Hadamard order " + std::to_string(order));
    return *h;
}

int least_hadamard_order(int n, std::optional<int> cap) {
    if (n < 1) throw Error(ErrorKind::RangeError, "factor count must be positive");
    const int limit = cap.value_or(max_hadamard_order());
    for (int v = n; v <= limit; ++v) {
        if (hadamard_order_supported(v, limit)) return v;
    }
    throw Error(ErrorKind::Unsupported, "no supported Hadamard order in [" + std::to_string(n) + ", " +
                                            std::to_string(limit) + "]");
}

}  // namespace chogen
