#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace myosched {

/// Exact rational with a positive denominator, always kept in lowest terms.
/// Heuristic values are compared through this type so that schedules never
/// depend on floating-point rounding.
class Rational {
public:
	constexpr Rational() = default;
	Rational(std::int64_t num, std::int64_t den = 1);

	std::int64_t num() const noexcept { return num_; }
	std::int64_t den() const noexcept { return den_; }

	double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
	bool is_zero() const noexcept { return num_ == 0; }

	/// Accepts "3", "0.5", "-1.25" and "3/4".
	static Rational parse(std::string_view text);

	/// Shortest decimal form when the denominator is a product of 2s and 5s,
	/// otherwise "num/den".
	std::string to_string() const;

	friend Rational operator+(const Rational& a, const Rational& b);
	friend Rational operator-(const Rational& a, const Rational& b);
	friend Rational operator*(const Rational& a, const Rational& b);

	friend bool operator==(const Rational&, const Rational&) = default;
	friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
	std::int64_t num_ = 0;
	std::int64_t den_ = 1;
};

} // namespace myosched
