#pragma once

// Parsing and formatting of complex scalars in the CLI syntax
// "a", "a+bi", "a-bi" (no spaces), plus comma-separated lists.

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "zamint/params.hpp"

namespace zamint {

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_complex(const Complex& z) {
    if (z.imag() == 0.0) return format_double(z.real());
    std::string s = format_double(z.real());
    s += (z.imag() < 0.0 || std::signbit(z.imag())) ? "-" : "+";
    s += format_double(std::abs(z.imag()));
    s += "i";
    return s;
}

/// Parse "a", "a+bi", "a-bi". Throws std::invalid_argument on junk.
inline Complex parse_complex(std::string_view sv) {
    auto fail = [&] {
        throw std::invalid_argument("cannot parse complex number: '" +
                                    std::string(sv) + "'");
    };
    if (sv.empty()) fail();
    const char* begin = sv.data();
    const char* end = sv.data() + sv.size();
    double re = 0.0;
    auto r1 = std::from_chars(begin, end, re);
    if (r1.ec != std::errc{}) fail();
    if (r1.ptr == end) return Complex(re, 0.0);
    // imaginary tail: [+-]b i  or the bare forms "bi" handled by sign parse
    const char* p = r1.ptr;
    if (*p != '+' && *p != '-') fail();
    double im = 0.0;
    auto r2 = std::from_chars(p, end, im);
    if (r2.ec != std::errc{} || r2.ptr + 1 != end || *r2.ptr != 'i') fail();
    return Complex(re, im);
}

inline std::vector<Complex> parse_complex_list(std::string_view sv) {
    std::vector<Complex> out;
    std::size_t pos = 0;
    while (pos <= sv.size()) {
        std::size_t comma = sv.find(',', pos);
        if (comma == std::string_view::npos) comma = sv.size();
        out.push_back(parse_complex(sv.substr(pos, comma - pos)));
        pos = comma + 1;
        if (comma == sv.size()) break;
    }
    return out;
}

inline ComplexTriple parse_complex_triple(std::string_view sv) {
    const std::vector<Complex> v = parse_complex_list(sv);
    if (v.size() != 3)
        throw std::invalid_argument("expected exactly three comma-separated values");
    return {v[0], v[1], v[2]};
}

}  // namespace zamint
