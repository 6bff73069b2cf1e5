#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace morselab {

// Exact small rational, always normalized with den > 0.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }

    friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend Rational operator*(long long k, Rational b) { return {k * b.num, b.den}; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    // Accepts "3", "3/2" and decimal forms like "0.25" (parsed exactly).
    static Rational parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("empty rational");
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            long long n = std::stoll(s.substr(0, slash));
            long long d = std::stoll(s.substr(slash + 1));
            return {n, d};
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
            if (tail.size() > 15) tail.resize(15);
            long long scale = 1;
            for (size_t i = 0; i < tail.size(); ++i) scale *= 10;
            long long whole = head.empty() || head == "-" ? 0 : std::stoll(head);
            long long frac = tail.empty() ? 0 : std::stoll(tail);
            bool neg = !head.empty() && head[0] == '-';
            long long n = (neg ? -1 : 1) * ((neg ? -whole : whole) * scale + frac);
            return {n, scale};
        }
        return {std::stoll(s), 1};
    }
};

} // namespace morselab
