#pragma once
// Reference computations used by the tests. Each is deliberately written independently of the
// library (plain loops, closed forms) so that agreement means something.

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * pi); }

inline double normal_pdf(double x, double mean, double var) {
    const double d = x - mean;
    return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * pi * var);
}

// Phi(z) = 1/2 + integral of the density from 0 to z, by Simpson.
inline double normal_cdf(double z) {
    return 0.5 + simpson([](double t) { return normal_pdf(t); }, 0.0, z, 4000);
}

// Bisection on a monotone increasing function.
inline double bisect(const std::function<double(double)>& f, double target, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Bivariate normal density written out in closed form.
inline double bvn_pdf(double x1, double x2, double m1, double m2, double s11, double s12, double s22) {
    const double det = s11 * s22 - s12 * s12;
    const double d1 = x1 - m1, d2 = x2 - m2;
    const double q = (s22 * d1 * d1 - 2.0 * s12 * d1 * d2 + s11 * d2 * d2) / det;
    return std::exp(-0.5 * q) / (2.0 * pi * std::sqrt(det));
}

// ln f1/f2 for the canonical two-feature example, from the closed-form densities.
inline double reference_llr(double x1, double x2) {
    return std::log(bvn_pdf(x1, x2, 2, 2, 1, .2, 1)) - std::log(bvn_pdf(x1, x2, 1, 1, .3, .1, .3));
}

// The printed (3-digit) joint density of (h, x1) under class 1 for the canonical example.
inline double printed_joint_density_w1(double h, double x1) {
    const double r = 1.91 + .866 * h + x1 - x1 * x1;
    const double sr = std::sqrt(r);
    return std::exp(-.385 * h - .074 * x1 * x1 + 1.805 * x1 - 1.243 * sr) * .00157 / std::sqrt(std::fabs(r)) *
           (std::exp(.178 * x1 * sr) + std::exp(2.49 * sr - .178 * x1 * sr));
}

inline double printed_parabola(double h, double x1) { return 1.91 + .866 * h + x1 - x1 * x1; }

// Mann-Whitney statistic by enumerating every pair.
inline double pairwise_auc(const std::vector<double>& s1, const std::vector<double>& s2) {
    double wins = 0.0;
    for (double a : s1)
        for (double b : s2) wins += a > b ? 1.0 : a == b ? 0.5 : 0.0;
    return wins / (static_cast<double>(s1.size()) * static_cast<double>(s2.size()));
}

// Splits CSV text into rows of fields (no quoting needed for these files).
inline std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Minimal XML well-formedness check: balanced, properly nested elements, quoted attributes.
// Sufficient for the documents this project writes (no CDATA, no DTD).
inline bool well_formed_xml(const std::string& doc, std::vector<std::string>* texts = nullptr) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    bool seen_root = false;
    while (i < doc.size()) {
        if (doc[i] != '<') {
            const std::size_t next = doc.find('<', i);
            const std::string text = doc.substr(i, next == std::string::npos ? std::string::npos : next - i);
            if (stack.empty() && text.find_first_not_of(" \n\r\t") != std::string::npos) return false;
            if (texts && !stack.empty()) texts->push_back(text);
            if (text.find('>') != std::string::npos) return false;
            i = next == std::string::npos ? doc.size() : next;
            continue;
        }
        const std::size_t close = doc.find('>', i);
        if (close == std::string::npos) return false;
        std::string tag = doc.substr(i + 1, close - i - 1);
        i = close + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.back() == '/';
        if (self_closing) tag.pop_back();
        // Attribute values must be quoted: count quotes.
        if (std::count(tag.begin(), tag.end(), '"') % 2) return false;
        const std::string name = tag.substr(0, tag.find_first_of(" \n\t"));
        if (stack.empty()) {
            if (seen_root) return false;
            seen_root = true;
        }
        if (!self_closing) stack.push_back(name);
    }
    return seen_root && stack.empty();
}

}  // namespace oracle
