// Acquisition of nontrivial zeta-zero ordinates: file tables, the embedded
// table, and a Riemann-Siegel sign-change scanner. All zeros are on the
// critical line by construction (real part 1/2).

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "zetaq/common.hpp"
#include "zetaq/riemann_siegel.hpp"

namespace zetaq {

// One nontrivial zero s = 1/2 + i*b. The index is the 1-based ordinal among
// all nontrivial zeros, or 0 when unknown (zeros found in an arbitrary window).
struct ZetaZero {
    static constexpr double real_part = 0.5;

    long index = 0;
    double b = 0.0;

    complex s() const { return complex(real_part, b); }
};

struct ZeroSource {
    enum class Kind { File, Embedded, Computed };

    Kind kind = Kind::Embedded;
    std::string path;          // File
    double t_lo = 0.0, t_hi = 0.0; // Computed

    static ZeroSource file(std::string p) { return {Kind::File, std::move(p), 0.0, 0.0}; }
    static ZeroSource embedded() { return {Kind::Embedded, {}, 0.0, 0.0}; }
    static ZeroSource computed(double lo, double hi) { return {Kind::Computed, {}, lo, hi}; }
};

// Ordered list of zeros, strictly increasing in b.
class ZeroTable {
public:
    ZeroTable() = default;

    ZeroTable(std::vector<ZetaZero> zeros, ZeroSource source)
        : zeros_(std::move(zeros)), source_(std::move(source)) {
        validate();
    }

    std::size_t size() const { return zeros_.size(); }
    bool empty() const { return zeros_.empty(); }
    const ZetaZero& operator[](std::size_t i) const { return zeros_[i]; }
    const std::vector<ZetaZero>& zeros() const { return zeros_; }
    const ZeroSource& source() const { return source_; }

    auto begin() const { return zeros_.begin(); }
    auto end() const { return zeros_.end(); }

    // Ordinate of the j-th zero of this table, 1-based.
    double b(std::size_t j) const {
        if (j < 1 || j > zeros_.size()) throw std::out_of_range("ZeroTable: ordinal out of range");
        return zeros_[j - 1].b;
    }

    std::vector<double> ordinates() const {
        std::vector<double> bs;
        bs.reserve(zeros_.size());
        for (const auto& z : zeros_) bs.push_back(z.b);
        return bs;
    }

    // First `count` zeros after dropping `offset - 1` leading ones. Original
    // indices are kept.
    ZeroTable slice(std::size_t offset, std::size_t count) const {
        if (offset < 1) throw std::invalid_argument("ZeroTable::slice: offset is 1-based");
        if (offset - 1 + count > zeros_.size())
            throw std::invalid_argument("ZeroTable::slice: not enough zeros (need " +
                                        std::to_string(offset - 1 + count) + ", have " +
                                        std::to_string(zeros_.size()) + ")");
        std::vector<ZetaZero> part(zeros_.begin() + static_cast<std::ptrdiff_t>(offset - 1),
                                   zeros_.begin() + static_cast<std::ptrdiff_t>(offset - 1 + count));
        return ZeroTable(std::move(part), source_);
    }

    ZeroTable prefix(std::size_t count) const { return slice(1, count); }

private:
    void validate() const {
        for (std::size_t i = 0; i < zeros_.size(); ++i) {
            if (!(zeros_[i].b > 6.0))
                throw std::invalid_argument("ZeroTable: ordinate " + std::to_string(zeros_[i].b) +
                                            " is not above 6 (first zero is near 14.13)");
            if (i > 0 && !(zeros_[i].b > zeros_[i - 1].b))
                throw std::invalid_argument("ZeroTable: ordinates must be strictly increasing");
        }
    }

    std::vector<ZetaZero> zeros_;
    ZeroSource source_;
};

namespace detail {

// Shortest decimal form that parses back to the same double.
inline std::string shortest_double(double value) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace detail

// Parses a zero table: one positive decimal ordinate per line, '#' comments
// and blank lines ignored. Ordinates are indexed by file position, so a table
// of first zeros gets correct ordinals; use ZeroTable::slice for offsets.
inline ZeroTable load_zeros_file(const std::string& path,
                                 std::optional<std::size_t> max_count = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_zeros_file: cannot open '" + path + "'");

    std::vector<ZetaZero> zeros;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv(line);
        if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
        while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t' || sv.back() == '\r')) sv.remove_suffix(1);
        if (sv.empty()) continue;

        double value = 0.0;
        auto res = std::from_chars(sv.data(), sv.data() + sv.size(), value);
        if (res.ec != std::errc() || res.ptr != sv.data() + sv.size() || !(value > 0.0))
            throw std::runtime_error("load_zeros_file: parse failure at line " + std::to_string(line_no) +
                                     " of '" + path + "'");
        if (!(value > 6.0))
            throw std::runtime_error("load_zeros_file: ordinate " + detail::shortest_double(value) +
                                     " at line " + std::to_string(line_no) +
                                     " is below the first zero (b1 ~ 14.13)");
        if (!zeros.empty() && !(value > zeros.back().b))
            throw std::runtime_error("load_zeros_file: non-increasing sequence at line " +
                                     std::to_string(line_no) + " of '" + path + "'");
        zeros.push_back({static_cast<long>(zeros.size()) + 1, value});
        if (max_count && zeros.size() >= *max_count) break;
    }
    return ZeroTable(std::move(zeros), ZeroSource::file(path));
}

// Canonical serialization: shortest round-trip decimals, one per line, LF.
// load_zeros_file followed by serialize_zeros is byte-stable on such files.
inline std::string serialize_zeros(const ZeroTable& table) {
    std::string out;
    for (const auto& z : table) {
        out += detail::shortest_double(z.b);
        out += '\n';
    }
    return out;
}

inline void save_zeros_file(const ZeroTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_zeros_file: cannot write '" + path + "'");
    out << serialize_zeros(table);
}

// Riemann-von Mangoldt main term (T/2pi) ln(T/2pi e); no O(log T) correction.
inline double count_zeros_asymptotic(double t) {
    const double threshold = two_pi * std::exp(1.0);
    if (t < threshold) throw std::domain_error("count_zeros_asymptotic: T must be >= 2*pi*e");
    return t / two_pi * std::log(t / threshold);
}

// Diagnostics from a zero scan. A count deviating from the Riemann-von
// Mangoldt main term by more than 2 is suspicious (likely a missed pair), but
// reported rather than thrown.
struct ScanReport {
    std::size_t found = 0;
    double expected = 0.0;
    bool count_suspicious = false;
};

namespace detail {

inline double counting_main_term_clamped(double t) {
    const double threshold = two_pi * std::exp(1.0);
    return t < threshold ? 0.0 : count_zeros_asymptotic(t);
}

// Bisection refinement of a sign change of rs_z inside [lo, hi].
inline double refine_zero(double lo, double hi, double z_lo, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double z_mid = rs_z(mid);
        if (z_mid == 0.0) return mid;
        if ((z_lo < 0.0) != (z_mid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            z_lo = z_mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Scans [lo, hi] (values z_lo, z_hi already computed) with `cells` interior
// samples; brackets go to `zeros`. A same-sign cell whose midpoint |Z| dips
// well below both endpoints gets re-subdivided: close pairs (Lehmer-like)
// can otherwise hide between samples.
inline void scan_cell(double lo, double hi, double z_lo, double z_hi,
                      int cells, int depth, double tol, std::vector<double>& zeros) {
    double prev_t = lo;
    double prev_z = z_lo;
    for (int i = 1; i <= cells; ++i) {
        const double t = (i == cells) ? hi : lo + (hi - lo) * i / cells;
        const double z = (i == cells) ? z_hi : rs_z(t);
        if (prev_z == 0.0) {
            zeros.push_back(prev_t); // landed exactly on a zero
        } else if ((prev_z < 0.0) != (z < 0.0)) {
            zeros.push_back(refine_zero(prev_t, t, prev_z, tol));
        } else if (depth > 0) {
            const double mid = 0.5 * (prev_t + t);
            const double z_mid = rs_z(mid);
            if ((prev_z < 0.0) != (z_mid < 0.0)) {
                zeros.push_back(refine_zero(prev_t, mid, prev_z, tol));
                zeros.push_back(refine_zero(mid, t, z_mid, tol));
            } else {
                const double small = std::min({std::abs(prev_z), std::abs(z_mid), std::abs(z)});
                const double large = std::max({std::abs(prev_z), std::abs(z_mid), std::abs(z)});
                if (small < 0.1 * large) {
                    scan_cell(prev_t, t, prev_z, z, 8, depth - 1, tol, zeros);
                }
            }
        }
        prev_t = t;
        prev_z = z;
    }
}

} // namespace detail

// Finds all zeros of Z in [t_lo, t_hi] by scanning Gram intervals with 8x
// subdivision and refining each bracket to |dt| < 1e-10. Ordinals are
// assigned when the window starts below the first zero (t_lo <= 14).
inline ZeroTable find_zeros_in_range(double t_lo, double t_hi, ScanReport* report = nullptr) {
    if (!(t_lo >= 10.0) || !(t_lo < t_hi))
        throw std::invalid_argument("find_zeros_in_range: need 10 <= t_lo < t_hi");

    constexpr double tol = 1e-10;

    // Grid: t_lo, every Gram point strictly inside, t_hi.
    std::vector<double> grid{t_lo};
    const long n_first = static_cast<long>(std::ceil(rs_theta(t_lo) / pi - 1e-12));
    for (long n = n_first;; ++n) {
        const double g = gram_point(n);
        if (g <= t_lo + 1e-9) continue;
        if (g >= t_hi - 1e-9) break;
        grid.push_back(g);
    }
    grid.push_back(t_hi);

    std::vector<double> found;
    double prev_z = rs_z(grid[0]);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double z_hi = rs_z(grid[i + 1]);
        detail::scan_cell(grid[i], grid[i + 1], prev_z, z_hi, 8, 3, tol, found);
        prev_z = z_hi;
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                found.end());

    const bool ordinals_known = t_lo <= 14.0;
    std::vector<ZetaZero> zeros;
    zeros.reserve(found.size());
    for (std::size_t i = 0; i < found.size(); ++i) {
        zeros.push_back({ordinals_known ? static_cast<long>(i) + 1 : 0, found[i]});
    }

    if (report) {
        report->found = zeros.size();
        report->expected = detail::counting_main_term_clamped(t_hi)
                         - detail::counting_main_term_clamped(t_lo);
        report->count_suspicious =
            std::abs(static_cast<double>(zeros.size()) - report->expected) > 2.0;
    }
    return ZeroTable(std::move(zeros), ZeroSource::computed(t_lo, t_hi));
}

// First `count` zeros by scanning from below the first zero; the window is
// sized from the counting main term and grown if the estimate runs short.
inline ZeroTable compute_first_zeros(std::size_t count, ScanReport* report = nullptr) {
    if (count == 0) return ZeroTable({}, ZeroSource::computed(10.0, 10.0));
    // Invert the main term for an upper ordinate, then add margin.
    double t_hi = 30.0;
    while (detail::counting_main_term_clamped(t_hi) < static_cast<double>(count) + 5.0)
        t_hi *= 1.3;
    for (int attempt = 0; attempt < 6; ++attempt) {
        ZeroTable all = find_zeros_in_range(10.0, t_hi, report);
        if (all.size() >= count) return all.prefix(count);
        t_hi *= 1.2;
    }
    throw std::runtime_error("compute_first_zeros: window growth failed");
}

} // namespace zetaq
