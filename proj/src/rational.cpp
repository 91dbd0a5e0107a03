#include "myosched/rational.hpp"

#include "myosched/errors.hpp"

#include <charconv>
#include <numeric>

namespace myosched {

namespace {

__extension__ typedef __int128 wide;

std::int64_t narrow(wide v)
{
	if (v > INT64_MAX || v < INT64_MIN)
		throw std::overflow_error("rational overflow");
	return static_cast<std::int64_t>(v);
}

Rational make_reduced(wide num, wide den)
{
	if (den < 0) {
		num = -num;
		den = -den;
	}
	wide a = num < 0 ? -num : num, b = den;
	while (b != 0) {
		wide t = a % b;
		a = b;
		b = t;
	}
	if (a > 1) {
		num /= a;
		den /= a;
	}
	return Rational(narrow(num), narrow(den));
}

std::int64_t parse_int(std::string_view s, std::string_view whole)
{
	std::int64_t v = 0;
	auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (ec != std::errc() || p != s.data() + s.size() || s.empty())
		throw ConfigError("not a rational number: '" + std::string(whole) + "'");
	return v;
}

} // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
	if (den == 0)
		throw ConfigError("rational with zero denominator");
	if (den < 0) {
		num = -num;
		den = -den;
	}
	std::int64_t g = std::gcd(num, den);
	if (g > 1) {
		num /= g;
		den /= g;
	}
	num_ = num;
	den_ = den;
}

Rational Rational::parse(std::string_view text)
{
	if (auto slash = text.find('/'); slash != std::string_view::npos)
		return Rational(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));

	auto dot = text.find('.');
	if (dot == std::string_view::npos)
		return Rational(parse_int(text, text));

	std::string_view int_part = text.substr(0, dot);
	std::string_view frac_part = text.substr(dot + 1);
	if (frac_part.empty() || frac_part.size() > 12 || frac_part.front() == '-' || frac_part.front() == '+')
		throw ConfigError("not a rational number: '" + std::string(text) + "'");

	bool negative = !int_part.empty() && int_part.front() == '-';
	if (negative)
		int_part.remove_prefix(1);
	std::int64_t whole = int_part.empty() ? 0 : parse_int(int_part, text);
	std::int64_t frac = parse_int(frac_part, text);
	std::int64_t scale = 1;
	for (std::size_t i = 0; i < frac_part.size(); ++i)
		scale *= 10;
	wide num = static_cast<wide>(whole) * scale + frac;
	return make_reduced(negative ? -num : num, scale);
}

std::string Rational::to_string() const
{
	if (den_ == 1)
		return std::to_string(num_);

	std::int64_t d = den_;
	int twos = 0, fives = 0;
	while (d % 2 == 0) {
		d /= 2;
		++twos;
	}
	while (d % 5 == 0) {
		d /= 5;
		++fives;
	}
	if (d != 1)
		return std::to_string(num_) + "/" + std::to_string(den_);

	int digits = std::max(twos, fives);
	wide scale = 1;
	for (int i = 0; i < digits; ++i)
		scale *= 10;
	wide scaled = static_cast<wide>(num_) * (scale / den_);
	bool negative = scaled < 0;
	if (negative)
		scaled = -scaled;
	std::string whole = std::to_string(static_cast<std::int64_t>(scaled / scale));
	std::string frac = std::to_string(static_cast<std::int64_t>(scaled % scale));
	frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
	return (negative ? "-" : "") + whole + "." + frac;
}

Rational operator+(const Rational& a, const Rational& b)
{
	return make_reduced(static_cast<wide>(a.num_) * b.den_ + static_cast<wide>(b.num_) * a.den_,
	                    static_cast<wide>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b)
{
	return make_reduced(static_cast<wide>(a.num_) * b.den_ - static_cast<wide>(b.num_) * a.den_,
	                    static_cast<wide>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b)
{
	return make_reduced(static_cast<wide>(a.num_) * b.num_, static_cast<wide>(a.den_) * b.den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b)
{
	wide lhs = static_cast<wide>(a.num_) * b.den_;
	wide rhs = static_cast<wide>(b.num_) * a.den_;
	if (lhs < rhs)
		return std::strong_ordering::less;
	if (lhs > rhs)
		return std::strong_ordering::greater;
	return std::strong_ordering::equal;
}

} // namespace myosched
