/**
 * Exact rational arithmetic on top of GMP, plus the conversions the rest of the
 * library needs: canonical "p/q" strings, exact decimal parsing, rounded square
 * roots and spreadsheet-friendly decimal rendering.
 */
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "tcp/error.hpp"

namespace tcp {

using Rational = mpq_class;
using Integer = mpz_class;

inline Integer pow10(unsigned long exponent) {
    Integer result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return result;
}

/// Canonical form: "p" for integers, "p/q" otherwise (q > 0, gcd 1).
inline std::string to_string(const Rational& value) { return value.get_str(); }

inline double to_double(const Rational& value) { return value.get_d(); }

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline Rational parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = s.substr(e + 1);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            throw error(errc::parse_error, "bad exponent in '" + std::string(text) + "'");
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
        s = s.substr(0, e);
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
        throw error(errc::parse_error, "not a number: '" + std::string(text) + "'");
    std::string digits = std::string(int_part) + std::string(frac_part);
    Integer mantissa(digits.empty() ? std::string("0") : digits, 10);
    exponent -= static_cast<long>(frac_part.size());
    Rational result(mantissa);
    if (exponent > 0)
        result *= pow10(static_cast<unsigned long>(exponent));
    else if (exponent < 0)
        result /= pow10(static_cast<unsigned long>(-exponent));
    if (negative) result = -result;
    return result;
}

}  // namespace detail

/// Accepts "p/q", integers and decimal literals (with optional exponent); all exact.
inline Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw error(errc::parse_error, "empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        std::string_view num_digits = num;
        if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
            num_digits.remove_prefix(1);
        if (!detail::all_digits(num_digits) || !detail::all_digits(den))
            throw error(errc::parse_error, "bad fraction '" + std::string(text) + "'");
        std::string num_str(num);
        if (!num_str.empty() && num_str.front() == '+') num_str.erase(0, 1);
        Integer n(num_str, 10);
        Integer d(std::string(den), 10);
        if (d == 0) throw error(errc::parse_error, "zero denominator in '" + std::string(text) + "'");
        Rational r(n, d);
        r.canonicalize();
        return r;
    }
    return detail::parse_decimal(text);
}

/// Square root: exact when numerator and denominator are perfect squares, else
/// rounded to `significant_digits` significant decimal digits (round half up).
inline Rational sqrt_rational(const Rational& value, int significant_digits = 30) {
    if (value < 0) throw error(errc::invalid_input, "square root of a negative number");
    if (value == 0) return Rational(0);
    const Integer& num = value.get_num();
    const Integer& den = value.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
        Integer rn, rd;
        mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
        return Rational(rn, rd);
    }
    // Decimal exponent of sqrt(value), estimated from bit lengths to stay valid
    // outside double range.
    long num_bits = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    double log10_estimate = 0.5 * static_cast<double>(num_bits - den_bits) * std::log10(2.0);
    long scale = static_cast<long>(significant_digits) - 1 - static_cast<long>(std::floor(log10_estimate)) + 1;
    // floor(2 * sqrt(value) * 10^scale), then halve with rounding.
    Rational scaled = value * 4;
    if (scale >= 0)
        scaled *= pow10(static_cast<unsigned long>(2 * scale));
    else
        scaled /= pow10(static_cast<unsigned long>(-2 * scale));
    Integer floor_scaled;
    mpz_fdiv_q(floor_scaled.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Integer twice;
    mpz_sqrt(twice.get_mpz_t(), floor_scaled.get_mpz_t());
    Integer rounded = (twice + 1) / 2;
    Rational result(rounded);
    if (scale >= 0)
        result /= pow10(static_cast<unsigned long>(scale));
    else
        result *= pow10(static_cast<unsigned long>(-scale));
    result.canonicalize();
    return result;
}

/// Decimal rendering with the given number of significant digits ("%g" style).
inline std::string to_decimal(const Rational& value, int significant_digits = 12) {
    mpf_class f(0, 512);
    f = value;
    char* buffer = nullptr;
    gmp_asprintf(&buffer, "%.*Fg", significant_digits, f.get_mpf_t());
    std::string out(buffer);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(buffer, out.size() + 1);
    return out;
}

/// Exact decimal expansion if the denominator has only factors 2 and 5.
inline std::optional<std::string> exact_decimal(const Rational& value) {
    Integer den = value.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), Integer(5).get_mpz_t());
    if (den != 1) return std::nullopt;
    unsigned long places = std::max(twos, fives);
    if (places == 0) return value.get_num().get_str();
    Integer scaled_num = value.get_num() * pow10(places) / value.get_den();
    bool negative = scaled_num < 0;
    if (negative) scaled_num = -scaled_num;
    std::string digits = scaled_num.get_str();
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return negative ? "-" + digits : digits;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer result;
    mpz_lcm(result.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return result;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer result;
    mpz_gcd(result.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return result;
}

}  // namespace tcp
